"""Adaptive-precision interval backend for non-quadratic irrationals.

An :class:`ApproxReal` is an expression that can be re-evaluated as a
rigorous mpmath interval at any precision.  Signs and floors are decided by
doubling the precision until the enclosure settles; the ceiling comes from
the ``APERIODICA_PRECISION`` environment variable (bits, default 4096).
Equal values cannot be told apart this way and raise
:class:`PrecisionExhausted`.
"""
from __future__ import annotations

import math
import os
from numbers import Rational

from mpmath import floor as mpfloor
from mpmath import iv, mpf, nstr

from .exactnum import QuadraticReal

__all__ = ["ApproxReal", "PrecisionExhausted", "max_precision", "enclose"]

PRECISION_ENV = "APERIODICA_PRECISION"


class PrecisionExhausted(ArithmeticError):
    pass


def max_precision() -> int:
    return int(os.environ.get(PRECISION_ENV, "4096"))


def enclose(x):
    """Interval enclosure of an exact number at the current ``iv`` precision."""
    if isinstance(x, ApproxReal):
        return x._fn()
    if isinstance(x, int):
        return iv.mpf(x)
    if isinstance(x, Rational):
        return iv.mpf(x.numerator) / x.denominator
    if isinstance(x, QuadraticReal):
        A, B, D, d = x.integer_parts()
        out = iv.mpf(A)
        if B:
            out = out + B * iv.sqrt(iv.mpf(d))
        return out / D
    raise TypeError(f"cannot enclose {x!r}")


def _midpoint(enc):
    lo, hi = enc.a.a, enc.b.a
    return (mpf(lo) + mpf(hi)) / 2


def _wrap(x):
    if isinstance(x, ApproxReal):
        return x
    if isinstance(x, (int, Rational, QuadraticReal)):
        return ApproxReal(lambda: enclose(x), str(x))
    return None


class ApproxReal:
    __slots__ = ("_fn", "label")

    def __init__(self, fn, label: str) -> None:
        self._fn = fn
        self.label = label

    @classmethod
    def of(cls, x) -> ApproxReal:
        out = _wrap(x)
        if out is None:
            raise TypeError(f"cannot convert {x!r} to ApproxReal")
        return out

    @classmethod
    def pi(cls) -> ApproxReal:
        return cls(lambda: +iv.pi, "pi")

    @classmethod
    def sqrt(cls, x) -> ApproxReal:
        inner = _wrap(x)
        return cls(lambda: iv.sqrt(inner._fn()), f"sqrt({inner.label})")

    def enclosure(self, prec: int):
        saved = iv.prec
        iv.prec = prec
        try:
            return self._fn()
        finally:
            iv.prec = saved

    def _refine(self, decide):
        prec = 64
        limit = max_precision()
        while prec <= limit:
            enc = self.enclosure(prec)
            out = decide(enc)
            if out is not None:
                return out
            prec *= 2
        raise PrecisionExhausted(f"undecided at {limit} bits: {self.label}")

    def sign(self) -> int:
        def decide(enc):
            if enc.a > 0:
                return 1
            if enc.b < 0:
                return -1
            if enc.a == 0 and enc.b == 0:
                return 0
            return None

        return self._refine(decide)

    def __floor__(self) -> int:
        def decide(enc):
            lo, hi = int(mpfloor(enc.a)), int(mpfloor(enc.b))
            return lo if lo == hi else None

        return self._refine(decide)

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __float__(self) -> float:
        return float(_midpoint(self.enclosure(64)))

    def _binary(self, other, op, sym, swap=False):
        other = _wrap(other)
        if other is None:
            return NotImplemented
        left, right = (other, self) if swap else (self, other)
        return ApproxReal(lambda: op(left._fn(), right._fn()), f"({left.label}{sym}{right.label})")

    def __add__(self, o):
        return self._binary(o, lambda x, y: x + y, "+")

    def __radd__(self, o):
        return self._binary(o, lambda x, y: x + y, "+", swap=True)

    def __sub__(self, o):
        return self._binary(o, lambda x, y: x - y, "-")

    def __rsub__(self, o):
        return self._binary(o, lambda x, y: x - y, "-", swap=True)

    def __mul__(self, o):
        return self._binary(o, lambda x, y: x * y, "*")

    def __rmul__(self, o):
        return self._binary(o, lambda x, y: x * y, "*", swap=True)

    def __truediv__(self, o):
        return self._binary(o, lambda x, y: x / y, "/")

    def __rtruediv__(self, o):
        return self._binary(o, lambda x, y: x / y, "/", swap=True)

    def __neg__(self) -> ApproxReal:
        return ApproxReal(lambda: -self._fn(), f"-{self.label}")

    def __abs__(self) -> ApproxReal:
        return -self if self.sign() < 0 else self

    def reciprocal(self) -> ApproxReal:
        return 1 / self

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError(f"cannot compare with {other!r}")
        return diff.sign()

    def __lt__(self, o):
        return self._cmp(o) < 0

    def __le__(self, o):
        return self._cmp(o) <= 0

    def __gt__(self, o):
        return self._cmp(o) > 0

    def __ge__(self, o):
        return self._cmp(o) >= 0

    def __eq__(self, o):
        if _wrap(o) is None:
            return NotImplemented
        return self._cmp(o) == 0

    __hash__ = None

    @property
    def is_rational(self) -> bool:
        return False

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"ApproxReal({self.label!r})"

    def to_json(self) -> dict:
        return {"approx": nstr(_midpoint(self.enclosure(128)), 30)}
