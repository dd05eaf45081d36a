"""Morphisms of the free monoid and their pointed fixed points."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

__all__ = ["Morphism", "PointedWord", "iterate", "fixed_point", "fixed_prefix", "letter_name"]

_NAMES = "0123456789abcdefghijklmnopqrstuvwxyz"


def letter_name(i: int) -> str:
    """One-character name for the ``i``-th letter of a derived alphabet."""
    return _NAMES[i] if i < len(_NAMES) else chr(0x100 + i)


@dataclass(frozen=True)
class Morphism:
    """Letter-to-word map; letters are single characters."""

    alphabet: tuple[str, ...]
    images: Mapping[str, str]

    def __init__(self, images: Mapping[str, str], alphabet=None) -> None:
        images = dict(images)
        alphabet = tuple(alphabet) if alphabet is not None else tuple(sorted(images))
        if set(alphabet) != set(images):
            raise ValueError("alphabet and image keys differ")
        for a, w in images.items():
            if len(a) != 1:
                raise ValueError(f"letter {a!r} is not a single character")
            if not w:
                raise ValueError(f"image of {a!r} is empty")
            bad = set(w) - set(alphabet)
            if bad:
                raise ValueError(f"image of {a!r} uses unknown letters {sorted(bad)}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "images", images)

    def __call__(self, word: str) -> str:
        return self.apply(word)

    def __getitem__(self, letter: str) -> str:
        return self.images[letter]

    def __hash__(self) -> int:
        return hash((self.alphabet, tuple(self.images[a] for a in self.alphabet)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.alphabet == other.alphabet and dict(self.images) == dict(other.images)

    def apply(self, word: str) -> str:
        return "".join(self.images[a] for a in word)

    def prefix_image(self, word: str, limit: int) -> str:
        """First ``limit`` letters of the image of ``word``."""
        out, n = [], 0
        for a in word:
            if n >= limit:
                break
            out.append(self.images[a])
            n += len(out[-1])
        return "".join(out)[:limit]

    def suffix_image(self, word: str, limit: int) -> str:
        """Last ``limit`` letters of the image of ``word``."""
        out, n = [], 0
        for a in reversed(word):
            if n >= limit:
                break
            out.append(self.images[a])
            n += len(out[-1])
        s = "".join(reversed(out))
        return s[len(s) - limit:] if len(s) > limit else s

    def power(self, k: int) -> Morphism:
        if k < 1:
            raise ValueError("power must be positive")
        out = self
        for _ in range(k - 1):
            out = out.compose(self)
        return out

    def compose(self, inner: Morphism) -> Morphism:
        """``self`` after ``inner``."""
        return Morphism({a: self.apply(inner.images[a]) for a in inner.alphabet}, inner.alphabet)

    def reversed(self) -> Morphism:
        """Morphism whose images are the mirror images of these."""
        return Morphism({a: w[::-1] for a, w in self.images.items()}, self.alphabet)

    def renamed(self, names: Mapping[str, str]) -> Morphism:
        table = str.maketrans(dict(names))
        return Morphism({names[a]: self.images[a].translate(table) for a in self.alphabet}, [names[a] for a in self.alphabet])

    def matrix(self) -> list[list[int]]:
        """``M[i][j]`` counts letter ``j`` in the image of letter ``i``."""
        return [[self.images[a].count(b) for b in self.alphabet] for a in self.alphabet]

    def __str__(self) -> str:
        return ", ".join(f"{a}->{self.images[a]}" for a in self.alphabet)

    def to_json(self) -> dict:
        return {"alphabet": list(self.alphabet), "images": {a: self.images[a] for a in self.alphabet}}

    @classmethod
    def parse(cls, text: str) -> Morphism:
        """``"A->AB, B->A"`` style description."""
        images = {}
        for part in text.split(","):
            lhs, sep, rhs = part.partition("->")
            if not sep:
                raise ValueError(f"bad rule {part.strip()!r}")
            images[lhs.strip()] = rhs.strip()
        return cls(images, list(images))


@dataclass(frozen=True)
class PointedWord:
    """Finite window ``left|right`` around the origin of a bidirectional word."""

    left: str
    right: str

    def __str__(self) -> str:
        return f"{self.left}|{self.right}"

    def map(self, letters: Mapping[str, str]) -> PointedWord:
        table = str.maketrans(dict(letters))
        return PointedWord(self.left.translate(table), self.right.translate(table))


def _check_seed(m: Morphism, seed: tuple[str, str]) -> None:
    left, right = seed
    if not m.images[right].startswith(right):
        raise ValueError(f"image of {right!r} does not start with {right!r}")
    if not m.images[left].endswith(left):
        raise ValueError(f"image of {left!r} does not end with {left!r}")


def iterate(m: Morphism, seed: tuple[str, str], rounds: int, limit: int | None = None) -> PointedWord:
    """``m^rounds(v_-1) | m^rounds(v_0)``, each side cut to ``limit`` letters if given.

    Cutting is exact: the first ``limit`` letters of an image only depend on
    the first ``limit`` letters of the preimage (all images are non-empty).
    """
    _check_seed(m, seed)
    left, right = seed
    for _ in range(rounds):
        if limit is None:
            left, right = m.apply(left), m.apply(right)
        else:
            left, right = m.suffix_image(left, limit), m.prefix_image(right, limit)
    return PointedWord(left, right)


def fixed_point(m: Morphism, seed: tuple[str, str], n: int, max_rounds: int = 10_000) -> PointedWord:
    """``n`` letters on each side of the pointed fixed point generated by ``seed``."""
    _check_seed(m, seed)
    left, right = seed
    for _ in range(max_rounds):
        if len(left) >= n and len(right) >= n:
            return PointedWord(left[-n:], right[:n])
        new_left, new_right = m.suffix_image(left, n), m.prefix_image(right, n)
        if (len(new_left) <= len(left) and len(left) < n) or (len(new_right) <= len(right) and len(right) < n):
            raise ValueError("fixed point does not grow from this seed")
        left, right = new_left, new_right
    raise ArithmeticError("fixed point did not reach the requested length")


def fixed_prefix(m: Morphism, letter: str, n: int, max_rounds: int = 10_000) -> str:
    """First ``n`` letters of the one-sided fixed point starting with ``letter``."""
    w = letter
    if not m.images[letter].startswith(letter) or len(m.images[letter]) < 2:
        raise ValueError(f"{letter!r} does not seed a growing fixed point")
    for _ in range(max_rounds):
        if len(w) >= n:
            return w[:n]
        w = m.prefix_image(w, n)
    raise ArithmeticError("fixed point did not reach the requested length")
