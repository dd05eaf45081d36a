"""β-expansions, the Rényi development of 1 and β-integers.

For quadratic β all arithmetic is exact, so the eventual period of the
Rényi development is detected by state repetition.  β-integers are
enumerated as admissible digit strings; for quadratic Pisot units they
coincide on the half-line with a cut-and-project set whose window is
returned by :func:`cap_equivalence`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .capcore import CapParams, CodedWord, Window
from .exactnum import AlgebraicProfile, QuadraticReal, classify, qsqrt
from .morphism import Morphism, fixed_prefix

__all__ = [
    "BetaBasis",
    "DigitString",
    "RenyiDev",
    "BetaIntegers",
    "CapEquivalence",
    "greedy_expand",
    "renyi_development",
    "parry_admissible",
    "beta_integers",
    "cap_equivalence",
    "beta_substitution",
    "gap_letter",
    "fixed_gap_word",
]

MAX_RENYI_TERMS = 10_000


@dataclass(frozen=True)
class BetaBasis:
    beta: object
    profile: AlgebraicProfile | None = None

    def __post_init__(self) -> None:
        beta = self.beta
        if isinstance(beta, (int, Fraction)):
            beta = QuadraticReal(beta)
            object.__setattr__(self, "beta", beta)
        if not beta > 1:
            raise ValueError(f"base must exceed 1, got {beta}")
        if self.profile is None and isinstance(beta, QuadraticReal) and not beta.is_rational:
            object.__setattr__(self, "profile", classify(beta))

    @classmethod
    def from_poly(cls, m: int, n: int, sign: str = "+") -> BetaBasis:
        """Positive root of ``x^2 = m*x + n`` (``sign='+'``) or ``x^2 = m*x - n``."""
        if sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")
        disc = m * m + 4 * n if sign == "+" else m * m - 4 * n
        if disc < 0:
            raise ValueError(f"x^2 = {m}x {sign} {n} has no real root")
        return cls((m + qsqrt(disc)) / 2)

    @classmethod
    def parse(cls, text: str) -> BetaBasis:
        """``"m,n,+"`` / ``"m,n,-"`` or a number literal."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) == 3 and parts[2] in ("+", "-"):
            return cls.from_poly(int(parts[0]), int(parts[1]), parts[2])
        from .literals import parse_number

        return cls(parse_number(text))

    @property
    def exact(self) -> bool:
        return isinstance(self.beta, QuadraticReal)

    @property
    def is_integer(self) -> bool:
        return self.exact and self.beta.is_rational and self.beta.as_fraction().denominator == 1

    @property
    def quadratic_form(self) -> tuple[str, int, int] | None:
        """``('+', m, n)`` when ``β^2 = mβ + n``, ``('-', m, n)`` when ``β^2 = mβ - n``."""
        p = self.profile
        if p is None or not p.is_quadratic_integer:
            return None
        _, c1, c0 = p.poly
        return ("+", -c1, -c0) if c0 < 0 else ("-", -c1, c0)

    @property
    def is_pisot_unit(self) -> bool:
        p = self.profile
        return p is not None and p.is_pisot and p.is_unit

    def conjugate(self) -> QuadraticReal:
        if self.profile is None:
            raise ValueError("base is not a quadratic irrational")
        return self.profile.conjugate

    def __str__(self) -> str:
        return str(self.beta)


def _basis(b) -> BetaBasis:
    return b if isinstance(b, BetaBasis) else BetaBasis(b)


@dataclass(frozen=True)
class DigitString:
    """Digits ``x_k ... x_{k-len+1}``, most significant first."""

    digits: tuple[int, ...]
    exponent: int

    def value(self, basis):
        beta = _basis(basis).beta
        out = 0
        for i, x in enumerate(self.digits):
            if x:
                out = out + x * beta ** (self.exponent - i)
        return out

    @property
    def integer_digits(self) -> tuple[int, ...]:
        if self.exponent < 0:
            return (0,)
        head = self.digits[: self.exponent + 1]
        return head + (0,) * (self.exponent + 1 - len(head))

    @property
    def fraction_digits(self) -> tuple[int, ...]:
        if self.exponent >= 0:
            return self.digits[self.exponent + 1:]
        return (0,) * (-self.exponent - 1) + self.digits

    @property
    def is_integer(self) -> bool:
        return not any(self.fraction_digits)

    def __str__(self) -> str:
        def fmt(ds):
            if any(d > 9 for d in ds):
                return ",".join(map(str, ds))
            return "".join(map(str, ds))

        frac = self.fraction_digits
        return fmt(self.integer_digits) + ("." + fmt(frac) if frac else "")


def greedy_expand(x, basis, depth: int = 64) -> DigitString:
    """Greedy β-expansion of ``x >= 0``, stopping after ``depth`` fractional digits."""
    basis = _basis(basis)
    beta = basis.beta
    if x < 0:
        raise ValueError("greedy expansion needs x >= 0")
    if x == 0:
        return DigitString((0,), 0)
    k, p = 0, beta**0
    while p * beta <= x:
        p, k = p * beta, k + 1
    while p > x:
        p, k = p / beta, k - 1
    s = x / p
    digits = [math.floor(s)]
    s = s - digits[0]
    while s != 0 and len(digits) - 1 - k < depth:
        s = s * beta
        d = math.floor(s)
        digits.append(d)
        s = s - d
    return DigitString(tuple(digits), k)


@dataclass(frozen=True)
class RenyiDev:
    """``d_β(1) = t_1 t_2 ...`` as preperiod and period (empty period: finite)."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    orbit: tuple = field(default=(), repr=False)
    exact: bool = True

    @property
    def finite(self) -> bool:
        return not self.period

    def digit(self, i: int) -> int:
        """``t_i`` for ``i >= 1``."""
        if i < 1:
            raise IndexError("digits start at 1")
        if i <= len(self.preperiod):
            return self.preperiod[i - 1]
        if self.finite:
            return 0
        return self.period[(i - 1 - len(self.preperiod)) % len(self.period)]

    def quasi_greedy(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Comparison sequence for the admissibility test, as (preperiod, period)."""
        if not self.finite:
            return self.preperiod, self.period
        t = list(self.preperiod)
        t[-1] -= 1
        return (), tuple(t)

    def quasi_digit(self, i: int) -> int:
        pre, per = self.quasi_greedy()
        if i <= len(pre):
            return pre[i - 1]
        return per[(i - 1 - len(pre)) % len(per)]

    def gaps(self) -> list:
        """Distinct distances between consecutive β-integers, ``T^i(1)`` for ``i >= 0``."""
        return [g for g in self.orbit if g != 0]

    def value(self, basis):
        """``sum t_i β^-i``; equals 1 by construction."""
        beta = _basis(basis).beta
        inv = 1 / beta
        out = 0
        for i, t in enumerate(self.preperiod, 1):
            out = out + t * inv**i
        if self.period:
            p = len(self.period)
            block = 0
            for k, t in enumerate(self.period, 1):
                block = block + t * inv**k
            out = out + inv ** len(self.preperiod) * block / (1 - inv**p)
        return out

    def __str__(self) -> str:
        pre = "".join(map(str, self.preperiod))
        return pre + (f"({''.join(map(str, self.period))})^w" if self.period else "")


def renyi_development(basis, max_terms: int = MAX_RENYI_TERMS) -> RenyiDev:
    """Iterate ``T(x) = βx - floor(βx)`` from 1 until it stops or cycles."""
    basis = _basis(basis)
    beta = basis.beta
    x = QuadraticReal(1) if basis.exact else 1
    orbit = [x]
    seen = {}
    digits = []
    for i in range(1, max_terms + 1):
        y = beta * x
        t = math.floor(y)
        x = y - t
        digits.append(t)
        if x == 0:
            return RenyiDev(tuple(digits), (), tuple(orbit) + (x,), basis.exact)
        if basis.exact:
            if x in seen:
                j = seen[x]
                return RenyiDev(tuple(digits[:j]), tuple(digits[j:]), tuple(orbit), True)
            seen[x] = i
        orbit.append(x)
    if basis.exact:
        raise ArithmeticError(f"no period within {max_terms} terms")
    return RenyiDev(tuple(digits), (), tuple(orbit), False)


def _compare_tail(digits, start: int, dev: RenyiDev) -> int:
    """Sign of ``digits[start:] 0^w`` against the comparison sequence."""
    n = len(digits) - start
    for i in range(n):
        d, t = digits[start + i], dev.quasi_digit(i + 1)
        if d != t:
            return -1 if d < t else 1
    # the zero padding is smaller unless the sequence is zero from here on,
    # which never happens for a quasi-greedy sequence
    return -1


def parry_admissible(digits, basis, dev: RenyiDev | None = None) -> bool:
    """Every suffix, zero-padded, is strictly below the quasi-greedy ``d_β(1)``."""
    if isinstance(digits, str):
        digits = [int(c) for c in digits if c != "."]
    digits = list(digits)
    if any(d < 0 for d in digits):
        raise ValueError("digits must be non-negative")
    dev = dev or renyi_development(basis)
    return all(_compare_tail(digits, i, dev) < 0 for i in range(len(digits)))


def _prefix_alive(digits: list[int], dev: RenyiDev) -> bool:
    """No suffix of ``digits`` already exceeds the comparison sequence."""
    for s in range(len(digits)):
        for i in range(len(digits) - s):
            d, t = digits[s + i], dev.quasi_digit(i + 1)
            if d != t:
                if d > t:
                    return False
                break
    return True


@dataclass(frozen=True)
class BetaIntegers:
    points: list
    gaps: list
    word: str
    gap_values: dict


def gap_letter(i: int) -> str:
    return chr(ord("A") + i)


def beta_integers(basis, bound) -> BetaIntegers:
    """Non-negative β-integers ``<= bound``, increasing, with their gap word.

    Admissible strings of a fixed length are produced in lexicographic order,
    which is also increasing value order.  Gap ``T^i(1)`` gets letter ``i``
    (``A`` for gap 1).
    """
    basis = _basis(basis)
    if basis.is_integer:
        b = int(basis.beta.as_fraction())
        pts = [QuadraticReal(i) for i in range(0, math.floor(bound) + 1)]
        return BetaIntegers(pts, [QuadraticReal(1)] * (len(pts) - 1), "A" * (len(pts) - 1), {"A": QuadraticReal(1)})
    p = basis.profile
    if p is None or not p.is_pisot:
        raise ValueError("exact β-integer enumeration needs a quadratic Pisot base")
    beta = basis.beta
    dev = renyi_development(basis)
    k, power = 0, QuadraticReal(1)
    while power * beta <= bound:
        power, k = power * beta, k + 1
    length = k + 1
    top = math.ceil(beta) - 1
    powers = [beta ** (length - 1 - i) for i in range(length)]
    points: list = []

    def walk(prefix: list[int], val) -> None:
        if val > bound:
            return
        if len(prefix) == length:
            points.append(val)
            return
        pos = len(prefix)
        for d in range(top + 1):
            cand = prefix + [d]
            if not _prefix_alive(cand, dev):
                break
            walk(cand, val + d * powers[pos] if d else val)

    walk([], QuadraticReal(0))
    gap_values = {gap_letter(i): g for i, g in enumerate(dev.gaps())}
    lookup = {g: a for a, g in gap_values.items()}
    gaps = [b - a for a, b in zip(points, points[1:])]
    try:
        word = "".join(lookup[g] for g in gaps)
    except KeyError as exc:
        raise ArithmeticError(f"unexpected gap {exc.args[0]}") from None
    return BetaIntegers(points, gaps, word, gap_values)


@dataclass(frozen=True)
class CapEquivalence:
    exists: bool
    window: Window | None
    params: CapParams | None
    checked: int = 0
    agrees: bool | None = None
    candidate: Window | None = None
    obstruction: str | None = None


def cap_equivalence(basis, n_points: int = 1000) -> CapEquivalence:
    """Window ``Ω`` with ``Σ_{β',β}(Ω) ∩ [0,∞) = Z_β ∩ [0,∞)``, checked on ``n_points``.

    For a quadratic Pisot base that is not a unit, the only candidate window
    is returned with the reason it has the wrong length.
    """
    basis = _basis(basis)
    form = basis.quadratic_form
    p = basis.profile
    if form is None or not p.is_pisot:
        raise ValueError(f"{basis} is not a quadratic Pisot number")
    sign, m, n = form
    beta, conj = basis.beta, basis.conjugate()
    params = CapParams(conj, beta)
    if n != 1:
        if sign == "+":
            cand = Window(m * conj / (1 - conj**2), m / (1 + conj))
            need = 1 - QuadraticReal(n) / beta
        else:
            cand = Window(0, 1 + (m - 2) / (1 - conj))
            need = n / conj
        reason = (
            f"candidate window {cand} has length {cand.length}, two-distance length needed {need}; "
            f"they differ by {cand.length - need}, zero only when n = 1"
        )
        return CapEquivalence(False, None, None, candidate=cand, obstruction=reason)
    window = Window(-1, -1 / conj + 1) if sign == "+" else Window(0, 1 / conj)
    ints = beta_integers(basis, n_points).points[:n_points]
    cw = CodedWord(params, window)
    cap = [cw.point(i).value for i in range(len(ints))]
    agrees = cw.point(0).value == 0 and cap == ints
    return CapEquivalence(True, window, params, len(ints), agrees)


def beta_substitution(basis) -> Morphism:
    """Substitution fixing the gap word of ``Z_β`` for a quadratic Pisot unit."""
    basis = _basis(basis)
    form = basis.quadratic_form
    if form is None or not basis.is_pisot_unit:
        raise ValueError(f"{basis} is not a quadratic Pisot unit")
    sign, m, _ = form
    if sign == "+":
        return Morphism({"A": "A" * m + "B", "B": "A"})
    return Morphism({"A": "A" * (m - 1) + "B", "B": "A" * (m - 2) + "B"})


def fixed_gap_word(basis, n: int) -> str:
    return fixed_prefix(beta_substitution(basis), "A", n)
