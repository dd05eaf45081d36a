"""Cut-and-project sequences and their coded words.

For irrational ``eps != eta`` and an interval window ``W`` the C&P set is

    Sigma_{eps,eta}(W) = { p + q*eta : p, q integers, p + q*eps in W }.

``p + q*eps`` is the *star* of the point.  Adjacent points differ by one of
two or three lattice vectors whose stars ``d1* > 0 > d2*`` are found with a
ladder of window lengths; the right neighbour of a point is then decided from
its star alone (the stepping function).  All decisions are exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .exactnum import IncompatibleRadicands, QuadraticReal, RingElem

__all__ = [
    "CapParams",
    "Window",
    "CapPoint",
    "DistancePair",
    "LadderLevel",
    "SteppingFn",
    "CodedWord",
    "Generation",
    "Normalization",
    "star",
    "distances",
    "gap_structure",
    "ladder",
    "stepping",
    "coded_word",
    "generate",
    "brute_points",
    "normalize",
    "mechanical",
    "mechanical_config",
    "point_density",
    "BINARY",
]

MAX_GENERATOR_STEPS = 1000


def _num(x):
    if isinstance(x, (int, Fraction)):
        return QuadraticReal(x)
    return x


def _is_rational(x) -> bool:
    return getattr(x, "is_rational", False)


def _same(x, y) -> bool:
    try:
        return (x - y).sign() == 0
    except IncompatibleRadicands:
        # irrationals from different quadratic fields never coincide
        return False


@dataclass(frozen=True)
class CapParams:
    """The pair ``(eps, eta)``: star-space slope and physical-space slope."""

    eps: QuadraticReal
    eta: QuadraticReal

    def __post_init__(self) -> None:
        object.__setattr__(self, "eps", _num(self.eps))
        object.__setattr__(self, "eta", _num(self.eta))
        if _is_rational(self.eps) or _is_rational(self.eta):
            raise ValueError("eps and eta must be irrational")
        if _same(self.eps, self.eta):
            raise ValueError("eps and eta must differ")

    def star(self, p: int, q: int):
        return p + q * self.eps

    def value(self, p: int, q: int):
        return p + q * self.eta

    def point(self, p: int, q: int) -> CapPoint:
        return CapPoint(p, q, self.value(p, q), self.star(p, q))


@dataclass(frozen=True)
class Window:
    """Interval ``[c, c+length)``, or ``(c, c+length]`` when ``left_closed`` is false."""

    c: QuadraticReal
    length: QuadraticReal
    left_closed: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", _num(self.c))
        object.__setattr__(self, "length", _num(self.length))
        if self.length <= 0:
            raise ValueError(f"window length must be positive, got {self.length}")

    @property
    def end(self):
        return self.c + self.length

    def __contains__(self, y) -> bool:
        if self.left_closed:
            return self.c <= y < self.end
        return self.c < y <= self.end

    def contains_closure(self, y) -> bool:
        return self.c <= y <= self.end

    def shifted(self, x) -> Window:
        return Window(self.c + x, self.length, self.left_closed)

    def scaled(self, s) -> Window:
        """Image of the window under ``y -> s*y``; a negative factor flips the closed end."""
        if s > 0:
            return Window(self.c * s, self.length * s, self.left_closed)
        return Window(self.end * s, -self.length * s, not self.left_closed)

    def __str__(self) -> str:
        lb, rb = ("[", ")") if self.left_closed else ("(", "]")
        return f"{lb}{self.c}, {self.end}{rb}"


@dataclass(frozen=True)
class CapPoint:
    p: int
    q: int
    value: QuadraticReal
    star: QuadraticReal

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "value": self.value.to_json(), "star": self.star.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> CapPoint:
        return cls(data["p"], data["q"], QuadraticReal.from_json(data["value"]), QuadraticReal.from_json(data["star"]))


def star(x: RingElem, eps) -> QuadraticReal:
    """The star map ``p + q*eta -> p + q*eps``."""
    return x.p + x.q * _num(eps)


# ---------------------------------------------------------------------------
# distances and the ladder
# ---------------------------------------------------------------------------

Vec = tuple[int, int]


def _add(u: Vec, v: Vec) -> Vec:
    return (u[0] + v[0], u[1] + v[1])


def _sub(u: Vec, v: Vec) -> Vec:
    return (u[0] - v[0], u[1] - v[1])


def _neg(u: Vec) -> Vec:
    return (-u[0], -u[1])


def _comb(u: Vec, x):
    return u[0] + u[1] * x


@dataclass(frozen=True)
class DistancePair:
    """Star values ``d1_star > 0 > d2_star`` of the two basic gaps.

    ``d1`` and ``d2`` are the gap vectors in lattice coordinates, so the
    physical gaps are ``d1[0] + d1[1]*eta`` and so on.  The window length
    lies in ``(lower, upper]``; ``upper == d1_star - d2_star``.
    """

    d1_star: QuadraticReal
    d2_star: QuadraticReal
    three_distances: bool
    d1: Vec = (1, 1)
    d2: Vec = (0, 1)
    lower: QuadraticReal | None = None
    upper: QuadraticReal | None = None
    level: int = 0

    def gaps(self, eta) -> tuple:
        """Physical gaps ``(D1, D2, D1 + D2)``."""
        g1, g2 = _comb(self.d1, eta), _comb(self.d2, eta)
        return g1, g2, g1 + g2

    def vectors(self) -> dict[str, Vec]:
        return {"A": self.d1, "B": _add(self.d1, self.d2), "C": self.d2}


@dataclass(frozen=True)
class LadderLevel:
    index: int
    length: QuadraticReal
    d1: Vec
    d2: Vec
    d1_star: QuadraticReal
    d2_star: QuadraticReal


def _ladder_down(eps, v1: Vec, v2: Vec):
    s1, s2 = _comb(v1, eps), _comb(v2, eps)
    if s1 + s2 > 0:
        return _add(v1, v2), v2
    return v1, _add(v1, v2)


def _ladder_up(eps, eta, v1: Vec, v2: Vec):
    if _comb(v1, eta) > _comb(v2, eta):
        return _sub(v1, v2), v2
    return v1, _sub(v2, v1)


def _level(eps, index, v1, v2) -> LadderLevel:
    s1, s2 = _comb(v1, eps), _comb(v2, eps)
    return LadderLevel(index, s1 - s2, v1, v2, s1, s2)


def ladder(eps, eta=None, down: int = 3, up: int = 0) -> list[LadderLevel]:
    """Ladder levels ``l_{-down} < ... < l_0 = 1 < ... < l_up`` for ``eps`` in (-1, 0).

    Going up needs ``eta > 0`` because the longer physical gap is the one
    that splits.
    """
    eps = _num(eps)
    if not (-1 < eps < 0):
        raise ValueError("the ladder needs eps in (-1, 0); normalize first")
    if up and eta is None:
        raise ValueError("climbing above length 1 needs eta")
    levels = [_level(eps, 0, (1, 1), (0, 1))]
    v1, v2 = (1, 1), (0, 1)
    for k in range(1, down + 1):
        v1, v2 = _ladder_down(eps, v1, v2)
        levels.insert(0, _level(eps, -k, v1, v2))
    v1, v2 = (1, 1), (0, 1)
    for k in range(1, up + 1):
        v1, v2 = _ladder_up(eps, eta, v1, v2)
        levels.append(_level(eps, k, v1, v2))
    return levels


def _ladder_pair(eps, eta, length, cap: int = 100000) -> DistancePair:
    v1, v2 = (1, 1), (0, 1)
    level = 0
    if length <= 1:
        for _ in range(cap):
            s1, s2 = _comb(v1, eps), _comb(v2, eps)
            lower = s1 if s1 + s2 > 0 else -s2
            if length > lower:
                upper = s1 - s2
                return DistancePair(s1, s2, upper > length, v1, v2, lower, upper, level)
            v1, v2 = _ladder_down(eps, v1, v2)
            level -= 1
    else:
        if eta is None:
            raise ValueError("window length above 1 needs eta to climb the ladder")
        for _ in range(cap):
            s1, s2 = _comb(v1, eps), _comb(v2, eps)
            upper = s1 - s2
            if length <= upper:
                lower = s1 if s1 + s2 > 0 else -s2
                return DistancePair(s1, s2, upper > length, v1, v2, lower, upper, level)
            v1, v2 = _ladder_up(eps, eta, v1, v2)
            level += 1
    raise ArithmeticError("ladder did not reach the window length")


def distances(eps, length, eta=None) -> DistancePair:
    """Star distances for ``eps`` in (-1, 0) and window length ``length``.

    The ladder starts from ``l_0 = 1`` with stars ``(1+eps, eps)`` and walks
    down (or up, with ``eta``) until ``length`` lies in ``(l_{n-1}, l_n]``.
    For ``eps`` outside (-1, 0) pass ``eta`` and the general frame is used.
    """
    eps, length = _num(eps), _num(length)
    if length <= 0:
        raise ValueError("window length must be positive")
    if -1 < eps < 0 and (eta is None or _num(eta) > 0):
        return _ladder_pair(eps, None if eta is None else _num(eta), length)
    if eta is None:
        raise ValueError("eps outside (-1, 0) needs eta")
    return gap_structure(CapParams(eps, eta), length)


@dataclass(frozen=True)
class _Frame:
    """Unimodular basis ``e1, e2`` with eps-ratio in (-1,0) and eta-ratio > 0."""

    e1: Vec
    e2: Vec
    eps: object  # eps in frame coordinates
    eta: object
    star_scale: object  # star of e1
    phys_scale: object  # physical value of e1

    def to_original(self, v: Vec) -> Vec:
        return (v[0] * self.e1[0] + v[1] * self.e2[0], v[0] * self.e1[1] + v[1] * self.e2[1])


def _frame(params: CapParams, cap: int = MAX_GENERATOR_STEPS) -> _Frame:
    eps, eta = params.eps, params.eta
    x = -eps
    # convergent vectors of x: consecutive ones straddle the line p + q*eps = 0
    prev, cur = (1, 0), None
    p2, q2, p1, q1 = 0, 1, 1, 0
    rest = x
    for _ in range(cap):
        a = math.floor(rest)
        p, q = a * p1 + p2, a * q1 + q2
        cur = (p, q)
        prev = (p1, q1)
        f_prev, f_cur = _comb(prev, eta), _comb(cur, eta)
        sp, sc = f_prev.sign(), f_cur.sign()
        if sp != 0 and sp == sc:
            e1, e2 = (prev, cur) if sp > 0 else (_neg(prev), _neg(cur))
            t, s = _comb(e1, eps), _comb(e1, eta)
            return _Frame(e1, e2, _comb(e2, eps) / t, _comb(e2, eta) / s, t, s)
        p2, q2, p1, q1 = p1, q1, p, q
        rest = 1 / (rest - a)
    raise ArithmeticError(f"no normalizing frame within {cap} generator steps")


def gap_structure(params: CapParams, length) -> DistancePair:
    """Gap vectors of ``Sigma_{eps,eta}`` for any window of the given length."""
    length = _num(length)
    if length <= 0:
        raise ValueError("window length must be positive")
    fr = _frame(params)
    t = fr.star_scale
    at = abs(t)
    inner = _ladder_pair(fr.eps, fr.eta, length / at)
    v1, v2 = fr.to_original(inner.d1), fr.to_original(inner.d2)
    if fr.phys_scale < 0:
        v1, v2 = _neg(v1), _neg(v2)
    if _comb(v1, params.eps) < 0:
        v1, v2 = v2, v1
    s1, s2 = _comb(v1, params.eps), _comb(v2, params.eps)
    return DistancePair(s1, s2, inner.three_distances, v1, v2, inner.lower * at, inner.upper * at, inner.level)


# ---------------------------------------------------------------------------
# exact star comparisons on lattice coordinates
# ---------------------------------------------------------------------------


class _StarTest:
    """Sign of ``p + q*eps - t`` for integers ``p, q``, using integer arithmetic only."""

    __slots__ = ("k1", "k2", "k3", "k4", "k5", "d")

    def __init__(self, eps: QuadraticReal, t) -> None:
        EA, EB, ED, d = eps.integer_parts()
        TA, TB, TD, dt = QuadraticReal.coerce(t).integer_parts()
        if TB and dt != d:
            raise IncompatibleRadicands("threshold outside the field of eps")
        self.k1, self.k2, self.k3 = ED * TD, EA * TD, TA * ED
        self.k4, self.k5, self.d = EB * TD, TB * ED, d

    def sign(self, p: int, q: int) -> int:
        x = p * self.k1 + q * self.k2 - self.k3
        y = q * self.k4 - self.k5
        if y == 0:
            return (x > 0) - (x < 0)
        if x >= 0 and y > 0:
            return 1
        if x <= 0 and y < 0:
            return -1
        if x > 0:
            return 1 if x * x > y * y * self.d else -1
        return 1 if y * y * self.d > x * x else -1


class _GenericStarTest:
    __slots__ = ("eps", "t")

    def __init__(self, eps, t) -> None:
        self.eps, self.t = eps, t

    def sign(self, p: int, q: int) -> int:
        return (p + q * self.eps - self.t).sign()


def _star_test(eps, t):
    if isinstance(eps, QuadraticReal) and isinstance(_num(t), QuadraticReal):
        try:
            return _StarTest(eps, t)
        except IncompatibleRadicands:
            pass
    return _GenericStarTest(eps, _num(t))


# ---------------------------------------------------------------------------
# stepping function
# ---------------------------------------------------------------------------


class SteppingFn:
    """Exchange of up to three intervals sending a star value to its right neighbour's.

    On a left-closed window ``[c, c+l)`` the pieces are
    ``A = [c, delta1)``, ``B = [delta1, delta2)``, ``C = [delta2, c+l)`` with
    translations ``d1*``, ``d1* + d2*`` and ``d2*``; ``delta1 = c + l - d1*``
    and ``delta2 = c - d2*``.  ``B`` is empty when there are two distances.
    """

    def __init__(self, params: CapParams, window: Window, pair: DistancePair | None = None) -> None:
        self.params = params
        self.window = window
        self.pair = pair or gap_structure(params, window.length)
        self.d1_star, self.d2_star = self.pair.d1_star, self.pair.d2_star
        self.delta1 = window.end - self.d1_star
        self.delta2 = window.c - self.d2_star
        self.shift = {"A": self.d1_star, "B": self.d1_star + self.d2_star, "C": self.d2_star}

    @property
    def intervals(self) -> dict[str, tuple]:
        w = self.window
        return {"A": (w.c, self.delta1), "B": (self.delta1, self.delta2), "C": (self.delta2, w.end)}

    def _check(self, y) -> None:
        if y not in self.window:
            raise ValueError(f"{y} lies outside the window {self.window}")

    def letter(self, y) -> str:
        """Letter of the gap leaving the point with star ``y``."""
        self._check(y)
        if self.window.left_closed:
            if y < self.delta1:
                return "A"
            return "C" if y >= self.delta2 else "B"
        if y <= self.delta1:
            return "A"
        return "C" if y > self.delta2 else "B"

    def letter_before(self, y) -> str:
        """Letter of the gap arriving at the point with star ``y``."""
        self._check(y)
        w = self.window
        if w.left_closed:
            if y >= w.c + self.d1_star:
                return "A"
            return "C" if y < w.end + self.d2_star else "B"
        if y > w.c + self.d1_star:
            return "A"
        return "C" if y <= w.end + self.d2_star else "B"

    def step(self, y):
        return y + self.shift[self.letter(y)]

    def step_inv(self, y):
        return y - self.shift[self.letter_before(y)]

    def __call__(self, y):
        return self.step(y)

    def orbit_word(self, y, n: int) -> str:
        """Letters of ``y, f(y), ..., f^{n-1}(y)``."""
        out = []
        for _ in range(n):
            a = self.letter(y)
            out.append(a)
            y = y + self.shift[a]
        return "".join(out)


def stepping(params: CapParams, window: Window) -> SteppingFn:
    return SteppingFn(params, window)


class _Walker:
    """Right and left neighbours in lattice coordinates."""

    def __init__(self, fn: SteppingFn) -> None:
        eps, w = fn.params.eps, fn.window
        self.left_closed = w.left_closed
        self.vec = fn.pair.vectors()
        self.fa = _star_test(eps, fn.delta1)
        self.fc = _star_test(eps, fn.delta2)
        self.ba = _star_test(eps, w.c + fn.d1_star)
        self.bc = _star_test(eps, w.end + fn.d2_star)

    def forward(self, p: int, q: int) -> str:
        if self.left_closed:
            if self.fa.sign(p, q) < 0:
                return "A"
            return "C" if self.fc.sign(p, q) >= 0 else "B"
        if self.fa.sign(p, q) <= 0:
            return "A"
        return "C" if self.fc.sign(p, q) > 0 else "B"

    def backward(self, p: int, q: int) -> str:
        if self.left_closed:
            if self.ba.sign(p, q) >= 0:
                return "A"
            return "C" if self.bc.sign(p, q) < 0 else "B"
        if self.ba.sign(p, q) > 0:
            return "A"
        return "C" if self.bc.sign(p, q) <= 0 else "B"


def _seed(params: CapParams, window: Window, cap: int = 10**6) -> tuple[int, int]:
    if 0 in window:
        return (0, 0)
    eps = params.eps
    for k in range(cap):
        for q in ((0,) if k == 0 else (k, -k)):
            if window.left_closed:
                p = math.ceil(window.c - q * eps)
            else:
                p = math.floor(window.c - q * eps) + 1
            if params.star(p, q) in window:
                return (p, q)
    raise ArithmeticError("no lattice point found for the window")


class CodedWord:
    """Pointed bidirectional coded word of a C&P set, extended on demand.

    Point ``x_0`` is 0 when 0 belongs to the set, otherwise the first point
    ``>= 0``; letter ``n`` codes the gap ``x_{n+1} - x_n``.  Indexing accepts
    negative integers and slices; ``letters`` renames the alphabet, e.g.
    ``{"A": "1", "C": "0"}`` for binary words.
    """

    def __init__(self, params: CapParams, window: Window, seed=None, letters: dict[str, str] | None = None) -> None:
        self.params = params
        self.window = window
        self.fn = SteppingFn(params, window)
        self._walk = _Walker(self.fn)
        self.letters = letters
        if seed is None:
            p, q = _seed(params, window)
            p, q = self._align(p, q)
        else:
            p, q = (seed.p, seed.q) if isinstance(seed, CapPoint) else seed
            if params.star(p, q) not in window:
                raise ValueError(f"seed ({p}, {q}) is not a point of the set")
        self.origin = (p, q)
        self._right: list[str] = []  # u_0, u_1, ...
        self._left: list[str] = []  # u_{-1}, u_{-2}, ...
        self._rpts: list[tuple[int, int]] = [(p, q)]  # x_0, x_1, ...
        self._lpts: list[tuple[int, int]] = []  # x_{-1}, x_{-2}, ...

    def _align(self, p: int, q: int) -> tuple[int, int]:
        eta = self.params.eta
        vec = self.fn.pair.vectors()
        if p + q * eta < 0:
            while p + q * eta < 0:
                v = vec[self._walk.forward(p, q)]
                p, q = p + v[0], q + v[1]
            return p, q
        while True:
            v = vec[self._walk.backward(p, q)]
            pp, qq = p - v[0], q - v[1]
            if pp + qq * eta < 0:
                return p, q
            p, q = pp, qq

    def extend_right(self, n: int) -> None:
        walk, vec = self._walk, self._walk.vec
        p, q = self._rpts[-1]
        out, pts = self._right, self._rpts
        while len(out) < n:
            a = walk.forward(p, q)
            v = vec[a]
            p, q = p + v[0], q + v[1]
            out.append(a)
            pts.append((p, q))

    def extend_left(self, n: int) -> None:
        walk, vec = self._walk, self._walk.vec
        p, q = self._lpts[-1] if self._lpts else self._rpts[0]
        out, pts = self._left, self._lpts
        while len(out) < n:
            a = walk.backward(p, q)
            v = vec[a]
            p, q = p - v[0], q - v[1]
            out.append(a)
            pts.append((p, q))

    def _rename(self, s: str) -> str:
        if self.letters is None:
            return s
        return s.translate(str.maketrans(self.letters))

    def __getitem__(self, key):
        if isinstance(key, slice):
            if key.step not in (None, 1) or key.start is None or key.stop is None:
                raise IndexError("only bounded unit-step slices are supported")
            return self.segment(key.start, key.stop)
        return self.segment(key, key + 1)

    def segment(self, start: int, stop: int) -> str:
        """Letters ``u_start ... u_{stop-1}``."""
        if stop <= start:
            return ""
        parts = []
        if start < 0:
            self.extend_left(-start)
            lo, hi = -min(stop, 0), -start  # indices into _left are -n-1
            parts.append("".join(reversed(self._left[lo:hi])))
        if stop > 0:
            self.extend_right(stop)
            parts.append("".join(self._right[max(start, 0):stop]))
        return self._rename("".join(parts))

    def prefix(self, n: int) -> str:
        return self.segment(0, n)

    def suffix(self, n: int) -> str:
        """The ``n`` letters left of the origin, ``u_{-n} ... u_{-1}``."""
        return self.segment(-n, 0)

    def lattice(self, n: int) -> tuple[int, int]:
        """Lattice coordinates of point ``x_n``."""
        if n >= 0:
            self.extend_right(n)
            return self._rpts[n]
        self.extend_left(-n)
        return self._lpts[-n - 1]

    def point(self, n: int) -> CapPoint:
        return self.params.point(*self.lattice(n))

    def points(self, start: int, stop: int) -> list[CapPoint]:
        return [self.point(n) for n in range(start, stop)]

    def __iter__(self) -> Iterator[str]:
        n = 0
        while True:
            yield self[n]
            n += 1


def coded_word(params: CapParams, window: Window, **kw) -> CodedWord:
    return CodedWord(params, window, **kw)


@dataclass(frozen=True)
class Generation:
    """Points ``x_{-n_left} .. x_{n_right}`` and the letters between them."""

    points: list[CapPoint]
    left: str
    right: str

    @property
    def word(self) -> str:
        return f"{self.left}|{self.right}"

    @property
    def origin_index(self) -> int:
        return len(self.left)


def generate(params: CapParams, window: Window, n_left: int = 0, n_right: int = 10, seed=None) -> Generation:
    if n_left < 0 or n_right < 0:
        raise ValueError("counts must be non-negative")
    w = CodedWord(params, window, seed=seed)
    return Generation(w.points(-n_left, n_right + 1), w.suffix(n_left), w.prefix(n_right))


def brute_points(params: CapParams, window: Window, lo, hi) -> list[CapPoint]:
    """All points of the set in ``[lo, hi]`` by direct enumeration of the lattice.

    Independent of the stepping machinery; used to cross-check it.
    """
    eps, eta = params.eps, params.eta
    lo, hi = _num(lo), _num(hi)
    # x - x* = q*(eta - eps), and x* ranges over the window
    k = eta - eps
    a = (lo - window.end) / k
    b = (hi - window.c) / k
    qlo, qhi = min(math.floor(a), math.floor(b)) - 1, max(math.ceil(a), math.ceil(b)) + 1
    out = []
    for q in range(qlo, qhi + 1):
        pmin = math.floor(window.c - q * eps)
        pmax = math.ceil(window.end - q * eps)
        for p in range(pmin, pmax + 1):
            if params.star(p, q) in window:
                x = params.value(p, q)
                if lo <= x <= hi:
                    out.append(params.point(p, q))
    out.sort(key=lambda pt: _SortKey(pt.value))
    return out


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v) -> None:
        self.v = v

    def __lt__(self, other: _SortKey) -> bool:
        return self.v < other.v


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Normalization:
    """``Sigma_{eps,eta}(W) = scale * Sigma_{params.eps, params.eta}(window)``.

    ``basis`` holds the lattice vectors (original coordinates) mapped to
    ``(1, 0)`` and ``(0, 1)``; ``letter_map`` renames letters of the normalized
    word into letters of the original one.
    """

    params: CapParams
    window: Window
    scale: QuadraticReal
    basis: tuple[Vec, Vec]
    letter_map: dict[str, str] = field(default_factory=lambda: {"A": "A", "B": "B", "C": "C"})

    def __iter__(self):
        return iter((self.params, self.window, self.scale))


def normalize(eps, eta, window: Window) -> Normalization:
    """Rewrite the set with ``eps~`` in (-1,0), ``eta~ > 0`` and ``max(1+eps~, -eps~) < |W~| <= 1``.

    The gap vectors of the set form a lattice basis; sending the shorter gap
    to ``(0, 1)`` and the difference of the gaps to ``(1, 0)`` is an element
    of GL(2, Z), hence a word in the three elementary transformations.  Gap
    vectors for arbitrary parameters come from a continued-fraction frame
    (at most ``MAX_GENERATOR_STEPS`` partial quotients) and the ladder.
    """
    params = CapParams(eps, eta)
    pair = gap_structure(params, window.length)
    g1, g2, _ = pair.gaps(params.eta)
    long_, short = (pair.d1, pair.d2) if g1 > g2 else (pair.d2, pair.d1)
    f1 = _sub(long_, short)
    s = _comb(f1, params.eta)
    t = _comb(f1, params.eps)
    new = CapParams(_comb(short, params.eps) / t, _comb(short, params.eta) / s)
    win = window.scaled(1 / t)
    swap = t < 0
    letters = {"A": "C", "B": "B", "C": "A"} if swap else {"A": "A", "B": "B", "C": "C"}
    lo = max(1 + new.eps, -new.eps)
    if not (lo < win.length <= 1):
        raise ArithmeticError("normalized window length out of range")
    return Normalization(new, win, s, (f1, short), letters)


# ---------------------------------------------------------------------------
# mechanical words
# ---------------------------------------------------------------------------


def mechanical(alpha, beta, kind: str = "lower", span=range(0, 10)) -> str:
    """Mechanical word ``s(n) = floor((n+1)a+b) - floor(na+b)`` over ``span``.

    ``kind="upper"`` uses ceilings instead of floors.  The letters are read
    off the coded word of :func:`mechanical_config`, where letter ``n`` is the
    gap leaving the lattice point with ``q = n``.
    """
    alpha, beta = _num(alpha), _num(beta)
    if _is_rational(alpha):
        raise ValueError("slope must be irrational")
    if kind not in ("lower", "upper"):
        raise ValueError("kind must be 'lower' or 'upper'")
    if isinstance(span, tuple):
        span = range(*span)
    if span.step != 1:
        raise ValueError("span must be a unit-step range")
    if not span:
        return ""
    params, window = mechanical_config(alpha, beta, kind)
    q = span.start
    # the unique p with p - q*alpha in the window
    p = math.ceil(beta + q * alpha) if kind == "upper" else math.floor(beta + q * alpha)
    word = CodedWord(params, window, seed=(p, q), letters=BINARY)
    return word.prefix(len(span))


def mechanical_config(alpha, beta, kind: str = "lower", eta=None) -> tuple[CapParams, Window]:
    """C&P data whose coded word (letters A->1, C->0) is the mechanical word.

    Upper words use ``[beta, beta+1)`` and lower words ``(beta-1, beta]`` with
    ``eps = -alpha``.  Any ``eta > 0`` gives the same word; the default is
    ``1 + alpha``.
    """
    alpha, beta = _num(alpha), _num(beta)
    if eta is None:
        eta = 1 + alpha
    params = CapParams(-alpha, eta)
    if kind == "upper":
        return params, Window(beta, 1)
    return params, Window(beta - 1, 1, left_closed=False)


BINARY = {"A": "1", "C": "0"}


def point_density(params: CapParams, window: Window, horizon: int = 1000):
    """Points per unit length counted over ``horizon`` consecutive points around 0."""
    if horizon < 2:
        raise ValueError("horizon too small")
    w = CodedWord(params, window)
    half = horizon // 2
    first, last = w.point(-half), w.point(horizon - half - 1)
    return (horizon - 1) / (last.value - first.value)
