"""Substitutions generating coded C&P words.

Given ``eps`` quadratic with ``-eps`` a Sturm number and a window
``[c, c+l)`` with ``c, l`` in ``Q(eps)``, :func:`derive` finds a unit
``gamma``, the finite set ``S`` of cut points closed under ``g_gamma``, a
morphism on the letters ``0..k`` indexing the cells of ``S``, the two seed
letters around the origin and the projection back to ``{A, B, C}``.

When the conjugate of ``eps`` is below -1 the derivation is run for
``-1 - eps``, whose stepping function on the same window is the inverse of
the original one; the resulting word is then read backwards with ``A`` and
``C`` exchanged.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field

from .capcore import CapParams, CodedWord, SteppingFn, Window
from .exactnum import QuadraticReal, fundamental_unit
from .morphism import Morphism, PointedWord, fixed_point, iterate, letter_name

__all__ = [
    "Morphism",
    "PointedWord",
    "PreconditionError",
    "NotQuadratic",
    "NotSturm",
    "NotNormalized",
    "NotInField",
    "OriginOutsideWindow",
    "LengthOutOfRange",
    "WindowNotLeftClosed",
    "SubstitutivityResult",
    "ProjectionReport",
    "g_gamma",
    "closure_set",
    "derive",
    "iterate",
    "fixed_point",
    "verify_projection",
    "merge_letters",
    "letter_quotient",
]

IND_CAP = 1000
SIZE_CAP = 10_000
JUMP_CAP = 100_000

_SWAP = {"A": "C", "B": "B", "C": "A"}


class PreconditionError(ValueError):
    pass


class NotQuadratic(PreconditionError):
    pass


class NotSturm(PreconditionError):
    pass


class NotNormalized(PreconditionError):
    pass


class NotInField(PreconditionError):
    pass


class OriginOutsideWindow(PreconditionError):
    pass


class LengthOutOfRange(PreconditionError):
    pass


class WindowNotLeftClosed(PreconditionError):
    pass


def _scaled(window: Window, gamma) -> Window:
    return window.scaled(gamma)


def g_gamma(x, gamma, fn: SteppingFn, cap: int = IND_CAP) -> tuple:
    """``(f^-ind(x) / gamma, ind)`` with ``ind`` the first ``i`` putting ``f^-i(x)`` in ``gamma*Omega``."""
    if x not in fn.window:
        raise ValueError(f"{x} is outside the window")
    target = _scaled(fn.window, gamma)
    y = x
    for i in range(cap + 1):
        if y in target:
            return y / gamma, i
        y = fn.step_inv(y)
    raise ArithmeticError(f"index of {x} exceeds {cap}")


def _working_fn(eps, window: Window) -> SteppingFn:
    fn = SteppingFn(CapParams(eps, eps.conjugate()), window)
    if fn.d1_star != 1 + eps or fn.d2_star != eps:
        raise ArithmeticError("unexpected gap structure for the derivation")
    return fn


def closure_set(params: CapParams, window: Window, gamma, cap: int = SIZE_CAP, ind_cap: int = IND_CAP) -> list:
    """Smallest set holding ``c``, ``c+l-1-eps``, ``c-eps`` and closed under ``g_gamma``, sorted."""
    fn = _working_fn(QuadraticReal.coerce(params.eps), window)
    return _closure(fn, gamma, cap, ind_cap)


def _closure(fn: SteppingFn, gamma, cap: int, ind_cap: int) -> list:
    w = fn.window
    eps = fn.d2_star
    seeds = [w.c, w.end - 1 - eps, w.c - eps]
    found = set(seeds)
    todo = list(seeds)
    while todo:
        x = todo.pop()
        y, _ = g_gamma(x, gamma, fn, ind_cap)
        if y not in found:
            if len(found) >= cap:
                raise ArithmeticError(f"closure set exceeds {cap} points")
            found.add(y)
            todo.append(y)
    return sorted(found)


@dataclass(frozen=True)
class SubstitutivityResult:
    gamma: QuadraticReal
    points: list
    morphism: Morphism
    initial: tuple[str, str]
    projection: dict
    jumps: dict
    eps: QuadraticReal
    window: Window
    mirrored: bool = False
    indices: dict = field(default_factory=dict)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.morphism.alphabet

    def fixed_point(self, n: int) -> PointedWord:
        return fixed_point(self.morphism, self.initial, n)

    def word(self, n: int) -> PointedWord:
        """``n`` projected letters on each side of the origin."""
        return self.fixed_point(n).map(self.projection)

    def to_json(self) -> dict:
        out = self.morphism.to_json()
        out["initial"] = list(self.initial)
        out["projection"] = {a: self.projection[a] for a in self.alphabet}
        out["gamma"] = str(self.gamma)
        out["points"] = [str(x) for x in self.points]
        out["jumps"] = {a: self.jumps[a] for a in self.alphabet}
        out["mirrored"] = self.mirrored
        return out


def _in_field(x, eps) -> bool:
    return isinstance(x, QuadraticReal) and (x.is_rational or x.d == eps.d)


def _check(params: CapParams, window: Window):
    eps = params.eps
    if not isinstance(eps, QuadraticReal) or eps.is_rational:
        raise NotQuadratic(f"eps = {eps} is not a quadratic irrational")
    if not window.left_closed:
        raise WindowNotLeftClosed("the window must be of the form [c, c+l)")
    if not -1 < eps < 0:
        raise NotNormalized(f"eps = {eps} is not in (-1, 0); normalize the configuration first")
    conj = eps.conjugate()
    if -1 <= conj <= 0:
        raise NotSturm(f"conjugate {conj} of eps lies in [-1, 0]")
    c, ell = window.c, window.length
    for name, x in (("c", c), ("length", ell)):
        if not _in_field(x, eps):
            raise NotInField(f"{name} = {x} is not in Q({eps})")
    if not (c <= 0 < c + ell):
        raise OriginOutsideWindow(f"need c <= 0 < c + l, got {window}")
    if not (max(-eps, 1 + eps) < ell <= 1):
        raise LengthOutOfRange(f"need max(-eps, 1+eps) < l <= 1, got l = {ell}")
    return eps, conj


def derive(
    params: CapParams,
    window: Window,
    gamma_power: int = 1,
    ind_cap: int = IND_CAP,
    size_cap: int = SIZE_CAP,
    jump_cap: int = JUMP_CAP,
) -> SubstitutivityResult:
    """Morphism, seeds and projection whose fixed point projects onto the coded word."""
    if gamma_power < 1:
        raise ValueError("gamma_power must be positive")
    eps, conj = _check(params, window)
    mirrored = conj < -1
    work = -1 - eps if mirrored else eps
    fn = _working_fn(work, window)
    gamma = fundamental_unit(work) ** gamma_power
    pts = _closure(fn, gamma, size_cap, ind_cap)
    names = [letter_name(i) for i in range(len(pts))]
    target = _scaled(window, gamma)

    def cell(y) -> str:
        return names[bisect.bisect_right(pts, y) - 1]

    images, jumps, indices = {}, {}, {}
    for a, x in zip(names, pts):
        y = gamma * x
        word = []
        for _ in range(jump_cap):
            word.append(cell(y))
            y = fn.step(y)
            if y in target:
                break
        else:
            raise ArithmeticError(f"return time of letter {a} exceeds {jump_cap}")
        images[a] = "".join(word)
        jumps[a] = len(word)
        indices[a] = g_gamma(x, gamma, fn, ind_cap)[1]
    initial = (cell(fn.step_inv(QuadraticReal(0))), cell(QuadraticReal(0)))
    projection = {a: fn.letter(x) for a, x in zip(names, pts)}
    morphism = Morphism(images, names)
    if mirrored:
        morphism = morphism.reversed()
        initial = (initial[1], initial[0])
        projection = {a: _SWAP[b] for a, b in projection.items()}
    left, right = initial
    if not (morphism.images[right].startswith(right) and morphism.images[left].endswith(left)):
        raise ArithmeticError("derived seeds are not compatible with the morphism")
    return SubstitutivityResult(gamma, pts, morphism, initial, projection, jumps, work, window, mirrored, indices)


@dataclass(frozen=True)
class ProjectionReport:
    ok: bool
    checked: int
    mismatch: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_projection(result: SubstitutivityResult, params: CapParams, window: Window, n_letters: int = 10_000) -> ProjectionReport:
    """Compare the projected fixed point with the coded word on ``n_letters`` each side."""
    got = result.word(n_letters)
    cw = CodedWord(params, window)
    right, left = cw.prefix(n_letters), cw.suffix(n_letters)
    for side, a, b in (("right", got.right, right), ("left", got.left[::-1], left[::-1])):
        for i, (x, y) in enumerate(zip(a, b)):
            if x != y:
                pos = i if side == "right" else -1 - i
                return ProjectionReport(False, n_letters, (pos, x, y))
    return ProjectionReport(True, n_letters)


def letter_quotient(m: Morphism, power: int = 1, projection: dict | None = None) -> dict:
    """Coarsest merge of letters with equal ``power``-th images modulo the merge itself.

    Starts from letters with literally equal images and keeps merging classes
    whose images agree under the current quotient; with a ``projection`` only
    letters with the same projected letter are merged.
    """
    mk = m.power(power)
    proj = projection or {a: "" for a in m.alphabet}
    rep = {a: a for a in m.alphabet}
    key = {a: (proj[a], mk.images[a]) for a in m.alphabet}
    while True:
        groups: dict = {}
        for a in m.alphabet:
            groups.setdefault(key[a], []).append(a)
        new = {a: min(g) for g in groups.values() for a in g}
        if new == rep and len(groups) == len(set(rep.values())):
            return rep
        rep = new
        table = str.maketrans(rep)
        key = {a: (proj[a], mk.images[a].translate(table)) for a in m.alphabet}


def merge_letters(m: Morphism, power: int = 1, projection: dict | None = None) -> Morphism:
    """Morphism induced by ``m^power`` on merged letters.

    When the merge classes are exactly the fibres of ``projection`` the
    result is written over the projected alphabet, otherwise over class
    representatives.
    """
    rep = letter_quotient(m, power, projection)
    mk = m.power(power)
    classes = sorted(set(rep.values()))
    if projection is not None:
        fibres = {}
        for a in m.alphabet:
            fibres.setdefault(projection[a], set()).add(rep[a])
        if all(len(v) == 1 for v in fibres.values()):
            names = {rep[a]: projection[a] for a in m.alphabet}
            table = str.maketrans({a: projection[a] for a in m.alphabet})
            images = {names[r]: mk.images[r].translate(table) for r in classes}
            return Morphism(images, sorted(images))
    table = str.maketrans(rep)
    return Morphism({r: mk.images[r].translate(table) for r in classes}, classes)
