"""Factor languages of coded C&P words.

The length-n factors of the coded word are in bijection with the cells cut
out of the window by the points ``c``, ``f^-i(delta1)`` and ``f^-i(delta2)``
for ``0 <= i < n``; each cell is labelled by the first ``n`` letters of the
orbit of its left endpoint.  Everything here (factor sets, complexities,
densities, Rauzy graphs, the breakpoints ``D_n``) is computed from that
partition with exact arithmetic.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .capcore import BINARY, CapParams, SteppingFn, Window, mechanical, mechanical_config, stepping
from .exactnum import QuadraticReal, ring_coords

__all__ = [
    "FactorSet",
    "ComplexityReport",
    "SpecialFactor",
    "RauzyEdge",
    "RauzyGraph",
    "SturmianReport",
    "factors",
    "scan_factors",
    "complexity",
    "boundary_counts",
    "special_factors",
    "special_prefixes",
    "factor_density",
    "densities",
    "rauzy",
    "reduce",
    "dn_breakpoints",
    "sturmian_checks",
    "sturmian_sweep",
    "is_balanced",
    "length_in_lattice",
    "ones_runs",
]

N0_CAP = 64


class _Key:
    __slots__ = ("v",)

    def __init__(self, v) -> None:
        self.v = v

    def __lt__(self, other: _Key) -> bool:
        return self.v < other.v


def _canonical(window: Window) -> Window:
    # the language depends on the length only, so right-closed windows are
    # analysed through their left-closed twin
    return window if window.left_closed else Window(window.c, window.length)


def _boundaries(fn: SteppingFn, n: int) -> list:
    pts = {fn.window.c}
    for start in (fn.delta1, fn.delta2):
        y = start
        for i in range(n):
            pts.add(y)
            if i + 1 < n:
                y = fn.step_inv(y)
    return sorted(pts, key=_Key)


@dataclass(frozen=True)
class FactorSet:
    """Length-``n`` factors, each with its cell ``[lo, hi)`` of the window."""

    n: int
    cells: dict[str, tuple]
    window: Window

    @property
    def words(self) -> list[str]:
        return sorted(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, w: str) -> bool:
        return w in self.cells

    def __iter__(self):
        return iter(self.words)

    def density(self, w: str):
        lo, hi = self.cells[w]
        return (hi - lo) / self.window.length

    def renamed(self, letters: dict[str, str]) -> set[str]:
        table = str.maketrans(letters)
        return {w.translate(table) for w in self.cells}


def factors(params: CapParams, window: Window, n: int) -> FactorSet:
    if n < 1:
        raise ValueError("factor length must be at least 1")
    window = _canonical(window)
    fn = stepping(params, window)
    pts = _boundaries(fn, n)
    cells: dict[str, tuple] = {}
    ends = pts[1:] + [window.end]
    for lo, hi in zip(pts, ends):
        w = fn.orbit_word(lo, n)
        if w in cells:
            raise ArithmeticError(f"factor {w} labels two cells; boundary points are not distinct")
        cells[w] = (lo, hi)
    return FactorSet(n, cells, window)


def scan_factors(word: str, n: int) -> set[str]:
    """Distinct length-``n`` substrings of a finite word."""
    return {word[i:i + n] for i in range(len(word) - n + 1)}


def length_in_lattice(params: CapParams, window: Window) -> bool:
    """Whether the window length lies in ``Z[eps]``."""
    ell = window.length
    if not isinstance(ell, QuadraticReal) or not isinstance(params.eps, QuadraticReal):
        return False
    return ring_coords(ell, params.eps) is not None


def boundary_counts(params: CapParams, window: Window, upto: int) -> list[int]:
    """``C(1), ..., C(upto)`` as counts of distinct boundary points."""
    fn = stepping(params, _canonical(window))
    pts = {fn.window.c}
    y1, y2 = fn.delta1, fn.delta2
    out = []
    for _ in range(upto):
        pts.add(y1)
        pts.add(y2)
        out.append(len(pts))
        y1, y2 = fn.step_inv(y1), fn.step_inv(y2)
    return out


@dataclass(frozen=True)
class ComplexityReport:
    n: int
    count: int
    regime: str  # "generic", "sturmian" or "eventually-sturmian"
    n0: int | None = None

    def expected(self) -> int:
        if self.regime == "generic":
            return 2 * self.n + 1
        if self.regime == "sturmian":
            return self.n + 1
        return self.n + self.n0 + 1 if self.n > self.n0 else 2 * self.n + 1


def complexity(params: CapParams, window: Window, n: int) -> ComplexityReport:
    """Number of length-``n`` factors and the complexity regime of the word.

    ``n0`` is the last length with ``C(n) = 2n + 1`` when the window length is
    in ``Z[eps]``; the search stops at ``N0_CAP``.
    """
    count = len(factors(params, window, n))
    fn = stepping(params, window)
    if not fn.pair.three_distances:
        return ComplexityReport(n, count, "sturmian", 0)
    if not length_in_lattice(params, window):
        return ComplexityReport(n, count, "generic")
    counts = [1] + boundary_counts(params, window, N0_CAP + 1)
    for k in range(N0_CAP + 1):
        if counts[k + 1] - counts[k] == 1:
            return ComplexityReport(n, count, "eventually-sturmian", k)
    raise ArithmeticError(f"n0 not found below {N0_CAP}")


@dataclass(frozen=True)
class SpecialFactor:
    word: str
    extensions: tuple[str, ...]


def _extensions(fs_next: FactorSet, w: str, side: str) -> tuple[str, ...]:
    if side == "left":
        return tuple(sorted(u[0] for u in fs_next.cells if u[1:] == w))
    return tuple(sorted(u[-1] for u in fs_next.cells if u[:-1] == w))


def special_prefixes(params: CapParams, window: Window, n: int) -> set[str]:
    """Prefixes of the codings of ``f(delta1)`` and ``f(c)``, the left special candidates."""
    fn = stepping(params, _canonical(window))
    w = fn.window
    return {fn.orbit_word(w.end + fn.d2_star, n), fn.orbit_word(w.c + fn.d1_star, n)}


def special_factors(params: CapParams, window: Window, n: int, side: str = "left") -> list[SpecialFactor]:
    """Factors of length ``n`` with at least two one-letter extensions on ``side``.

    For a three-distance word whose window length is outside ``Z[eps]`` the
    left special factors are read off as orbit prefixes; otherwise (and for
    the right side, which is the mirror image) extensions are counted in
    ``L_{n+1}``.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    nxt = factors(params, window, n + 1)
    if side == "left" and stepping(params, window).pair.three_distances and not length_in_lattice(params, window):
        cands = special_prefixes(params, window, n)
    else:
        cands = {u[1:] if side == "left" else u[:-1] for u in nxt.cells}
    out = []
    for w in sorted(cands):
        ext = _extensions(nxt, w, side)
        if len(ext) > 1:
            out.append(SpecialFactor(w, ext))
    return out


def factor_density(params: CapParams, window: Window, w: str):
    fs = factors(params, window, len(w))
    if w not in fs:
        raise ValueError(f"{w!r} is not a factor")
    return fs.density(w)


def densities(params: CapParams, window: Window, n: int) -> dict[str, QuadraticReal]:
    fs = factors(params, window, n)
    return {w: fs.density(w) for w in fs.words}


# ---------------------------------------------------------------------------
# Rauzy graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RauzyEdge:
    label: str
    source: str
    target: str
    weight: object = None


@dataclass
class RauzyGraph:
    """Vertices are factors of length ``n``; edge ``w`` joins its prefix to its suffix."""

    n: int
    vertices: list[str]
    edges: list[RauzyEdge] = field(default_factory=list)

    def out_degree(self, v: str) -> int:
        return sum(1 for e in self.edges if e.source == v)

    def in_degree(self, v: str) -> int:
        return sum(1 for e in self.edges if e.target == v)

    def max_degrees(self) -> tuple[int, int]:
        return max(map(self.in_degree, self.vertices)), max(map(self.out_degree, self.vertices))

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.source, e.target, label=e.label, weight=e.weight)
        return g

    def is_strongly_connected(self) -> bool:
        return nx.is_strongly_connected(self.to_networkx())

    def conservation_holds(self) -> bool:
        flow: dict[str, list] = {v: [0, 0] for v in self.vertices}
        for e in self.edges:
            flow[e.source][1] = flow[e.source][1] + e.weight
            flow[e.target][0] = flow[e.target][0] + e.weight
        return all(i == o for i, o in flow.values())

    def reversed(self) -> RauzyGraph:
        return RauzyGraph(self.n, list(self.vertices), [RauzyEdge(e.label[::-1], e.target, e.source, e.weight) for e in self.edges])

    def to_dot(self, weights: bool = True) -> str:
        lines = [f"digraph rauzy_{self.n} {{"]
        for v in self.vertices:
            lines.append(f"  {_dotq(v)} [label={_dotq(v)}];")
        for e in self.edges:
            lab = e.label if not (weights and e.weight is not None) else f"{e.label} ({e.weight})"
            lines.append(f"  {_dotq(e.source)} -> {_dotq(e.target)} [label={_dotq(lab)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": list(self.vertices),
            "edges": [
                {"label": e.label, "source": e.source, "target": e.target, "weight": None if e.weight is None else str(e.weight)}
                for e in self.edges
            ],
        }


def _dotq(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def rauzy(params: CapParams, window: Window, n: int, weighted: bool = True) -> RauzyGraph:
    verts = factors(params, window, n)
    fs = factors(params, window, n + 1)
    edges = [RauzyEdge(u, u[:-1], u[1:], fs.density(u) if weighted else None) for u in fs.words]
    return RauzyGraph(n, verts.words, edges)


def reduce(g: RauzyGraph) -> RauzyGraph:
    """Contract every vertex with one incoming and one outgoing edge.

    A chain ``y -> x -> z`` becomes ``y -> z`` carrying the common weight;
    labels are glued along their overlap of length ``n``.
    """
    verts = list(g.vertices)
    edges = list(g.edges)
    n = g.n
    changed = True
    while changed:
        changed = False
        for v in verts:
            ins = [e for e in edges if e.target == v]
            outs = [e for e in edges if e.source == v]
            if len(ins) == 1 and len(outs) == 1 and ins[0] is not outs[0] and ins[0].source != v:
                e, f = ins[0], outs[0]
                if e.weight != f.weight:
                    raise ArithmeticError(f"weight not conserved through {v}")
                merged = RauzyEdge(e.label + f.label[n:], e.source, f.target, e.weight)
                edges = [x for x in edges if x is not e and x is not f] + [merged]
                verts.remove(v)
                changed = True
                break
    return RauzyGraph(n, verts, edges)


# ---------------------------------------------------------------------------
# breakpoints D_n
# ---------------------------------------------------------------------------


@dataclass
class _Piece:
    lo: object
    hi: object
    z1: tuple  # orbit point of delta1 as (const, slope): const + slope*l
    z2: tuple


def _affine_root(f: tuple, g: tuple):
    """Root of ``f(l) = g(l)`` for affine ``f, g``, or None when parallel."""
    da, db = f[0] - g[0], f[1] - g[1]
    return None if db == 0 else -da / db


def _ev(f: tuple, ell):
    return f[0] + f[1] * ell


def dn_breakpoints(eps, n: int) -> list:
    """Window lengths in ``(max(-eps, 1+eps), 1]`` where ``C(n) < 2n + 1``.

    With ``c = 0`` the orbit points ``f^k(delta1)`` and ``f^k(delta2)`` are
    affine in the length ``l`` on a partition of the range that is refined
    whenever an orbit point meets a discontinuity.  Candidate lengths are the
    roots of ``f^k(delta1) = delta2`` and ``f^k(delta2) = delta1`` together
    with the refinement points; each candidate is confirmed by counting
    boundary points exactly.
    """
    eps = QuadraticReal.coerce(eps)
    if not (-1 < eps < 0):
        raise ValueError("eps must lie in (-1, 0)")
    if n < 1:
        raise ValueError("n must be positive")
    lo, hi = max(-eps, 1 + eps), QuadraticReal(1)
    delta1 = (-1 - eps, 1)  # l - 1 - eps
    delta2 = (-eps, 0)
    moves = {"A": 1 + eps, "B": 1 + 2 * eps, "C": eps}
    pieces = [_Piece(lo, hi, delta1, delta2)]
    candidates = {hi}

    def in_open(x, p: _Piece) -> bool:
        return x is not None and p.lo < x < p.hi

    for k in range(n + 1):
        for p in pieces:
            if k < n:
                r = _affine_root(p.z1, delta2)
                if in_open(r, p):
                    candidates.add(r)
            r = _affine_root(p.z2, delta1)
            if in_open(r, p):
                candidates.add(r)
        if k == n:
            break
        # split where an orbit point crosses delta1 or delta2, then step
        refined = []
        for p in pieces:
            cuts = []
            for z in (p.z1, p.z2):
                for b in (delta1, delta2):
                    r = _affine_root(z, b)
                    if in_open(r, p):
                        cuts.append(r)
            cuts = sorted(set(cuts), key=_Key)
            candidates.update(cuts)
            edges = [p.lo] + cuts + [p.hi]
            for a, b in zip(edges, edges[1:]):
                refined.append(_Piece(a, b, p.z1, p.z2))
        pieces = []
        for p in refined:
            mid = (p.lo + p.hi) / 2
            new = []
            for z in (p.z1, p.z2):
                y = _ev(z, mid)
                if y < _ev(delta1, mid):
                    m = moves["A"]
                elif y >= _ev(delta2, mid):
                    m = moves["C"]
                else:
                    m = moves["B"]
                new.append((z[0] + m, z[1]))
            pieces.append(_Piece(p.lo, p.hi, new[0], new[1]))

    params = CapParams(eps, 1 - eps)
    out = []
    for ell in sorted(candidates, key=_Key):
        if lo < ell <= hi:
            if boundary_counts(params, Window(0, ell), n)[-1] < 2 * n + 1:
                out.append(ell)
    return out


# ---------------------------------------------------------------------------
# sturmian words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SturmianReport:
    alpha: QuadraticReal
    beta: QuadraticReal
    n: int
    factors: tuple[str, ...]
    p1: bool
    p2: bool
    p3: bool
    balanced: bool
    intercept_agrees: bool

    @property
    def ok(self) -> bool:
        return self.p1 and self.p2 and self.p3 and self.balanced and self.intercept_agrees


def is_balanced(word: str, max_len: int) -> bool:
    """Ones-counts of equal-length factors differ by at most one, lengths ``1..max_len``."""
    bits = np.frombuffer(word.encode(), dtype=np.uint8) == ord("1")
    csum = np.concatenate(([0], np.cumsum(bits, dtype=np.int64)))
    for k in range(1, min(max_len, len(word)) + 1):
        window = csum[k:] - csum[:-k]
        if window.max() - window.min() > 1:
            return False
    return True


def _sturmian_report(alpha, beta, n: int, layers: dict[int, set[str]], stretch: str) -> SturmianReport:
    words = tuple(sorted(layers[n]))
    lo_ones, hi_ones = math.floor(n * alpha), math.ceil(n * alpha)
    p1 = len(words) == n + 1 and all(w.count("1") in (lo_ones, hi_ones) for w in words)
    probe = mechanical(alpha, -alpha, "upper", range(-n + 1, n + 1))
    p2 = all(w in probe for w in words)
    p3 = sum(1 for w in words if w.startswith("1")) == hi_ones
    balanced = all(
        max(c) - min(c) <= 1 for k in range(1, n + 1) for c in [[w.count("1") for w in layers[k]]]
    )
    agrees = scan_factors(stretch, n) <= set(words)
    return SturmianReport(alpha, beta, n, words, p1, p2, p3, balanced, agrees)


def sturmian_sweep(alpha, beta, n_max: int, prefix: int = 2000) -> list[SturmianReport]:
    """:func:`sturmian_checks` for every ``n = 1..n_max`` from one factor computation.

    Factors of length ``k`` are the length-``k`` prefixes of factors of length
    ``n_max``, so only ``L_{n_max}`` is built from the window.
    """
    alpha, beta = QuadraticReal.coerce(alpha), QuadraticReal.coerce(beta)
    params, window = mechanical_config(alpha, beta, "upper")
    top = factors(params, window, n_max).renamed(BINARY)
    layers = {k: {w[:k] for w in top} for k in range(1, n_max + 1)}
    stretch = mechanical(alpha, beta, "upper", range(0, prefix))
    return [_sturmian_report(alpha, beta, n, layers, stretch) for n in range(1, n_max + 1)]


def sturmian_checks(alpha, beta, n: int, prefix: int = 2000) -> SturmianReport:
    """Properties of the upper mechanical word with slope ``alpha`` and intercept ``beta``.

    (P1) each length-``n`` factor has ``floor(n*alpha)`` or ``ceil(n*alpha)`` ones;
    (P2) all ``n+1`` factors occur in the letters ``-n+1 .. n`` of the word with
    intercept ``-alpha``; (P3) ``ceil(n*alpha)`` factors start with 1.  The
    factor set is also compared with a ``prefix``-letter stretch of the word
    with the given intercept.
    """
    return sturmian_sweep(alpha, beta, n, prefix)[-1]


def ones_runs(word: str) -> Counter:
    """Lengths ``x`` of the blocks ``0 1^x 0`` occurring in ``word``."""
    runs = Counter()
    for i, part in enumerate(word.split("0")[1:-1]):
        runs[len(part)] += 1
    return runs
