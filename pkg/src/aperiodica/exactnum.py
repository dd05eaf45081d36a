"""Exact arithmetic in real quadratic fields Q(sqrt(d)).

Every number used by the rest of the package is a :class:`QuadraticReal`,
an element ``(A + B*sqrt(d)) / D`` stored with integer coefficients.  Signs
and floors are decided with integer arithmetic only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

__all__ = [
    "IncompatibleRadicands",
    "QuadraticReal",
    "RingElem",
    "AlgebraicProfile",
    "TAU",
    "qsqrt",
    "sign",
    "floor",
    "ceil",
    "conjugate",
    "classify",
    "ring_coords",
    "order_unit",
    "fundamental_unit",
]

_TRIAL_LIMIT = 10**6
_MAX_COFACTOR = 10**18


class IncompatibleRadicands(ValueError):
    """Raised when two irrational operands live in different quadratic fields."""


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, core)`` with ``n == s*s*core`` and ``core`` square-free.

    Trial division runs up to 10**6.  A remaining cofactor below 10**18 has
    at most two prime factors, so it is square-free unless it is a perfect
    square.  Larger cofactors are rejected.
    """
    if n <= 0:
        raise ValueError(f"radicand must be positive, got {n}")
    s, core = 1, 1
    m = n
    p = 2
    while p * p <= m and p <= _TRIAL_LIMIT:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                core *= p
        p += 1 if p == 2 else 2
    if m > 1:
        if m >= _MAX_COFACTOR:
            raise ValueError(f"radicand {n} too large for square-free normalization")
        r = math.isqrt(m)
        if r * r == m:
            s *= r
        else:
            core *= m
    return s, core


def _coeffs(x):
    """Integer coefficients ``(A, B, D, d)`` of a rational or QuadraticReal."""
    if isinstance(x, QuadraticReal):
        return x._A, x._B, x._D, x._d
    if isinstance(x, int):
        return x, 0, 1, 1
    if isinstance(x, Rational):
        return x.numerator, 0, x.denominator, 1
    return None


def _common_radicand(d1: int, b1: int, d2: int, b2: int) -> int:
    if b1 == 0:
        return d2
    if b2 == 0 or d1 == d2:
        return d1
    raise IncompatibleRadicands(f"cannot combine sqrt({d1}) and sqrt({d2})")


@total_ordering
class QuadraticReal:
    """Exact real number ``a + b*sqrt(d)`` with rational ``a, b``.

    ``d`` is kept square-free; rationals carry ``d == 1`` and ``b == 0``.
    Instances are immutable and hashable, and a rational QuadraticReal
    compares and hashes equal to the corresponding ``int``/``Fraction``.

    >>> t = QuadraticReal(Fraction(1, 2), Fraction(1, 2), 5)
    >>> t * t == t + 1
    True
    >>> str(QuadraticReal(3, -2, 8))
    '3-4*sqrt(2)'
    """

    __slots__ = ("_A", "_B", "_D", "_d")

    def __init__(self, a=0, b=0, d: int = 1) -> None:
        a = Fraction(a)
        b = Fraction(b)
        if not isinstance(d, int):
            raise TypeError("radicand must be an int")
        s, core = squarefree_split(d)
        b *= s
        if core == 1:
            a, b = a + b, Fraction(0)
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), den, core)

    def _set(self, A: int, B: int, D: int, d: int) -> None:
        if D < 0:
            A, B, D = -A, -B, -D
        g = math.gcd(math.gcd(A, B), D)
        if g > 1:
            A //= g
            B //= g
            D //= g
        if B == 0:
            d = 1
        self._A, self._B, self._D, self._d = A, B, D, d

    @classmethod
    def _make(cls, A: int, B: int, D: int, d: int) -> QuadraticReal:
        obj = cls.__new__(cls)
        obj._set(A, B, D, d)
        return obj

    @classmethod
    def coerce(cls, x) -> QuadraticReal:
        c = _coeffs(x)
        if c is None:
            raise TypeError(f"cannot convert {x!r} to QuadraticReal")
        return x if isinstance(x, QuadraticReal) else cls._make(*c)

    # -- accessors -------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self._A, self._D)

    @property
    def b(self) -> Fraction:
        return Fraction(self._B, self._D)

    @property
    def d(self) -> int:
        return self._d

    @property
    def is_rational(self) -> bool:
        return self._B == 0

    def as_fraction(self) -> Fraction:
        if self._B:
            raise ValueError(f"{self} is irrational")
        return Fraction(self._A, self._D)

    def integer_parts(self) -> tuple[int, int, int, int]:
        """The canonical integers ``(A, B, D, d)`` with value ``(A + B*sqrt(d))/D``."""
        return self._A, self._B, self._D, self._d

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        c = _coeffs(other)
        if c is None:
            return NotImplemented
        A2, B2, D2, d2 = c
        d = _common_radicand(self._d, self._B, d2, B2)
        if D2 == self._D:
            return QuadraticReal._make(self._A + A2, self._B + B2, D2, d)
        return QuadraticReal._make(self._A * D2 + A2 * self._D, self._B * D2 + B2 * self._D, self._D * D2, d)

    __radd__ = __add__

    def __neg__(self) -> QuadraticReal:
        return QuadraticReal._make(-self._A, -self._B, self._D, self._d)

    def __pos__(self) -> QuadraticReal:
        return self

    def __abs__(self) -> QuadraticReal:
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        c = _coeffs(other)
        if c is None:
            return NotImplemented
        A2, B2, D2, d2 = c
        return self + QuadraticReal._make(-A2, -B2, D2, d2)

    def __rsub__(self, other):
        c = _coeffs(other)
        if c is None:
            return NotImplemented
        return QuadraticReal._make(*c) - self

    def __mul__(self, other):
        c = _coeffs(other)
        if c is None:
            return NotImplemented
        A2, B2, D2, d2 = c
        d = _common_radicand(self._d, self._B, d2, B2)
        A1, B1 = self._A, self._B
        return QuadraticReal._make(A1 * A2 + B1 * B2 * d, A1 * B2 + A2 * B1, self._D * D2, d)

    __rmul__ = __mul__

    def reciprocal(self) -> QuadraticReal:
        A, B, D, d = self._A, self._B, self._D, self._d
        n = A * A - B * B * d
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadraticReal._make(A * D, -B * D, n, d)

    def __truediv__(self, other):
        c = _coeffs(other)
        if c is None:
            return NotImplemented
        return self * QuadraticReal._make(*c).reciprocal()

    def __rtruediv__(self, other):
        c = _coeffs(other)
        if c is None:
            return NotImplemented
        return QuadraticReal._make(*c) * self.reciprocal()

    def __pow__(self, k: int) -> QuadraticReal:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.reciprocal()
        k = abs(k)
        result = QuadraticReal._make(1, 0, 1, 1)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- order -----------------------------------------------------------
    def sign(self) -> int:
        A, B = self._A, self._B
        if B == 0:
            return (A > 0) - (A < 0)
        if A >= 0 and B > 0:
            return 1
        if A <= 0 and B < 0:
            return -1
        # opposite signs: compare A^2 with B^2 d (never equal, d square-free)
        if A > 0:
            return 1 if A * A > B * B * self._d else -1
        return 1 if B * B * self._d > A * A else -1

    def __eq__(self, other) -> bool:
        c = _coeffs(other)
        if c is None:
            return NotImplemented
        return (self._A, self._B, self._D, self._d) == c

    def __lt__(self, other) -> bool:
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.sign() < 0

    def __hash__(self) -> int:
        if self._B == 0:
            return hash(Fraction(self._A, self._D))
        return hash((self._A, self._B, self._D, self._d))

    def __bool__(self) -> bool:
        return self._A != 0 or self._B != 0

    def __floor__(self) -> int:
        A, B, D, d = self._A, self._B, self._D, self._d
        if B == 0:
            return A // D
        s = math.isqrt(B * B * d)  # s < |B|sqrt(d) < s+1
        return (A + s) // D if B > 0 else (A - s - 1) // D

    def __ceil__(self) -> int:
        return -(-self).__floor__()

    def __float__(self) -> float:
        return float(Fraction(self._A, self._D)) + float(Fraction(self._B, self._D)) * math.sqrt(self._d)

    # -- Galois structure ------------------------------------------------
    def conjugate(self) -> QuadraticReal:
        return QuadraticReal._make(self._A, -self._B, self._D, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._A * self._A - self._B * self._B * self._d, self._D * self._D)

    def trace(self) -> Fraction:
        return Fraction(2 * self._A, self._D)

    # -- text and JSON ---------------------------------------------------
    def __str__(self) -> str:
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        mag = abs(b)
        rad = f"sqrt({self._d})" if mag == 1 else f"{mag}*sqrt({self._d})"
        if a == 0:
            return rad if b > 0 else "-" + rad
        return f"{a}{'+' if b > 0 else '-'}{rad}"

    def __repr__(self) -> str:
        return f"QuadraticReal({str(self)!r})"

    def to_json(self) -> dict:
        a, b = self.a, self.b
        return {"a": [a.numerator, a.denominator], "b": [b.numerator, b.denominator], "d": self._d}

    @classmethod
    def from_json(cls, obj: dict) -> QuadraticReal:
        return cls(Fraction(*obj["a"]), Fraction(*obj["b"]), int(obj["d"]))

    @classmethod
    def parse(cls, text: str) -> QuadraticReal:
        from .literals import parse_number

        return parse_number(text)


TAU = QuadraticReal(Fraction(1, 2), Fraction(1, 2), 5)


def qsqrt(x) -> QuadraticReal:
    """Exact square root of a non-negative rational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    return QuadraticReal(0, Fraction(1, x.denominator), x.numerator * x.denominator) if x else QuadraticReal(0)


def sign(x) -> int:
    return QuadraticReal.coerce(x).sign() if not hasattr(x, "sign") else x.sign()


def floor(x) -> int:
    return math.floor(x)


def ceil(x) -> int:
    return -math.floor(-x)


def conjugate(x) -> QuadraticReal:
    return QuadraticReal.coerce(x).conjugate()


@dataclass(frozen=True)
class AlgebraicProfile:
    """Minimal polynomial ``c2*x^2 + c1*x + c0`` (primitive, ``c2 > 0``) and flags."""

    value: QuadraticReal
    poly: tuple[int, int, int]
    is_quadratic_integer: bool
    is_pisot: bool
    is_unit: bool
    is_sturm: bool

    @property
    def conjugate(self) -> QuadraticReal:
        return self.value.conjugate()

    @property
    def discriminant(self) -> int:
        c2, c1, c0 = self.poly
        return c1 * c1 - 4 * c2 * c0

    def poly_str(self) -> str:
        c2, c1, c0 = self.poly
        out = ("" if c2 == 1 else str(c2)) + "x^2"
        for coef, mono in ((c1, "x"), (c0, "")):
            if coef:
                mag = abs(coef)
                body = mono if (mag == 1 and mono) else f"{mag}{mono}"
                out += ("+" if coef > 0 else "-") + body
        return out


def classify(x) -> AlgebraicProfile:
    x = QuadraticReal.coerce(x)
    if x.is_rational:
        raise ValueError(f"{x} is rational; classification needs a quadratic irrational")
    tr, nm = x.trace(), x.norm()
    lcm = tr.denominator * nm.denominator // math.gcd(tr.denominator, nm.denominator)
    c2, c1, c0 = lcm, int(-tr * lcm), int(nm * lcm)
    g = math.gcd(math.gcd(c2, c1), c0)
    c2, c1, c0 = c2 // g, c1 // g, c0 // g
    conj = x.conjugate()
    integral = c2 == 1
    return AlgebraicProfile(
        value=x,
        poly=(c2, c1, c0),
        is_quadratic_integer=integral,
        is_pisot=integral and x > 1 and abs(conj) < 1,
        is_unit=integral and abs(c0) == 1,
        is_sturm=0 < x < 1 and not (0 < conj < 1),
    )


@dataclass(frozen=True)
class RingElem:
    """Element ``p + q*theta`` of the additive group ``Z[theta]``."""

    p: int
    q: int
    theta: QuadraticReal

    @property
    def value(self) -> QuadraticReal:
        return self.p + self.q * self.theta

    def __add__(self, other: RingElem) -> RingElem:
        return RingElem(self.p + other.p, self.q + other.q, self.theta)

    def __sub__(self, other: RingElem) -> RingElem:
        return RingElem(self.p - other.p, self.q - other.q, self.theta)

    def __neg__(self) -> RingElem:
        return RingElem(-self.p, -self.q, self.theta)

    def with_context(self, theta: QuadraticReal) -> RingElem:
        """Same coordinates over another generator; the star map when theta = epsilon."""
        return RingElem(self.p, self.q, theta)


def ring_coords(x, theta) -> tuple[int, int] | None:
    """Coordinates ``(p, q)`` of ``x = p + q*theta`` when ``x`` lies in ``Z[theta]``."""
    x = QuadraticReal.coerce(x)
    theta = QuadraticReal.coerce(theta)
    if theta.is_rational:
        raise ValueError("generator must be irrational")
    if not x.is_rational and x.d != theta.d:
        return None
    q = x.b / theta.b
    p = x.a - q * theta.a
    if q.denominator != 1 or p.denominator != 1:
        return None
    return int(p), int(q)


def order_unit(disc: int, max_steps: int = 10**6) -> QuadraticReal:
    """Fundamental unit (> 1) of the quadratic order of discriminant ``disc``.

    Expands ``(disc mod 2 + sqrt(disc))/2`` as a continued fraction; the
    product of the complete quotients over one period is the unit.
    """
    if disc <= 0 or disc % 4 not in (0, 1) or math.isqrt(disc) ** 2 == disc:
        raise ValueError(f"{disc} is not the discriminant of a real quadratic order")
    x = QuadraticReal(Fraction(disc % 2, 2), Fraction(1, 2), disc)
    seen: dict[QuadraticReal, int] = {}
    quotients: list[QuadraticReal] = []
    for i in range(max_steps):
        if x in seen:
            unit = QuadraticReal(1)
            for y in quotients[seen[x]:]:
                unit = unit * y
            if abs(unit.norm()) != 1:
                raise ArithmeticError("continued fraction period did not yield a unit")
            return unit
        seen[x] = i
        quotients.append(x)
        x = (x - math.floor(x)).reciprocal()
    raise ArithmeticError(f"no period found within {max_steps} partial quotients")


def fundamental_unit(theta) -> QuadraticReal:
    """Unit ``g`` in (0,1) with conjugate > 1 and ``g*Z[theta] = Z[theta]``.

    ``theta`` may be a QuadraticReal or a :class:`RingElem` (its generator is
    used).  The multiplier ring of ``Z + Z*theta`` is the order generated by
    ``c2*theta`` where ``c2`` leads the primitive minimal polynomial, so the
    answer is the smallest power of that order's fundamental unit with the
    required position.
    """
    if isinstance(theta, RingElem):
        theta = theta.theta
    prof = classify(theta)
    eta = order_unit(prof.discriminant)
    gamma = eta.reciprocal() if eta.norm() == 1 else (eta * eta).reciprocal()
    for u in (gamma, gamma.reciprocal()):
        for y in (u, u * theta):
            if ring_coords(y, theta) is None:
                raise ArithmeticError(f"{gamma} does not preserve Z[{theta}]")
    return gamma
