"""Self-similarity of C&P sets and geometric pictures of substitution fixed points."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .capcore import CapParams, CodedWord, Window
from .exactnum import QuadraticReal, classify, qsqrt, ring_coords
from .morphism import Morphism, fixed_prefix

__all__ = [
    "SelfSimilarCheck",
    "SimilarityFactor",
    "InclusionReport",
    "SubstitutionMatrix",
    "GeometricRepresentation",
    "check_selfsimilar_config",
    "find_factor",
    "verify_inclusion",
    "substitution_matrix",
    "geometric_representation",
]

SEARCH_RADIUS = 50


@dataclass(frozen=True)
class SelfSimilarCheck:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def check_selfsimilar_config(params: CapParams, window: Window) -> SelfSimilarCheck:
    """The set is self-similar iff eps is quadratic, eta its conjugate and 0 is in the closed window."""
    eps, eta = params.eps, params.eta
    if not isinstance(eps, QuadraticReal) or not isinstance(eta, QuadraticReal):
        return SelfSimilarCheck(False, "parameters are not exact quadratic numbers")
    if eps.is_rational:
        return SelfSimilarCheck(False, "eps is rational")
    if eta != eps.conjugate():
        return SelfSimilarCheck(False, f"eta = {eta} is not the conjugate {eps.conjugate()} of eps")
    if not window.contains_closure(0):
        return SelfSimilarCheck(False, f"0 is not in the closure of {window}")
    return SelfSimilarCheck(True, "eps quadratic, eta = eps', 0 in closure of window")


@dataclass(frozen=True)
class SimilarityFactor:
    """``gamma = a + M*b*eta`` (squared when the raw value is below -1)."""

    gamma: QuadraticReal
    conjugate: QuadraticReal
    certificate: tuple[int, int]
    squared: bool = False

    def to_json(self) -> dict:
        return {
            "gamma": str(self.gamma),
            "conjugate": str(self.conjugate),
            "certificate": list(self.certificate),
            "squared": self.squared,
        }


def _search_order(radius: int):
    for s in range(1, 2 * radius + 1):
        for a in range(-s, s + 1):
            rest = s - abs(a)
            if rest == 0 or abs(a) > radius or rest > radius:
                continue
            yield a, rest
            yield a, -rest


def find_factor(params: CapParams, window: Window, radius: int = SEARCH_RADIUS) -> SimilarityFactor:
    """First ``gamma = a + M*b*eta`` with ``gamma' in (0, 1)``.

    ``M`` is the leading coefficient of the minimal polynomial of eta.  Pairs
    are tried by increasing ``|a| + |b|``, then increasing ``a``, positive
    ``b`` before negative.  A negative ``gamma`` is replaced by its square.
    """
    check = check_selfsimilar_config(params, window)
    if not check:
        raise ValueError(f"configuration is not self-similar: {check.reason}")
    eta = params.eta
    lead = classify(eta).poly[0]
    conj_eta = eta.conjugate()
    for a, b in _search_order(radius):
        g_conj = a + lead * b * conj_eta
        if 0 < g_conj < 1:
            gamma = a + lead * b * eta
            if gamma > 1:
                return SimilarityFactor(gamma, g_conj, (a, b))
            return SimilarityFactor(gamma * gamma, g_conj * g_conj, (a, b), squared=True)
    raise ArithmeticError(f"no factor with |a|, |b| <= {radius}")


@dataclass(frozen=True)
class InclusionReport:
    ok: bool
    checked: int
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def verify_inclusion(factor, params: CapParams, window: Window, n_points: int = 1000) -> InclusionReport:
    """Check ``gamma * x`` is again a point for ``n_points`` points around the origin."""
    gamma = factor.gamma if isinstance(factor, SimilarityFactor) else QuadraticReal.coerce(factor)
    cw = CodedWord(params, window)
    half = n_points // 2
    for i in range(-half, n_points - half):
        x = cw.point(i)
        y = gamma * x.value
        coords = ring_coords(y, params.eta)
        if coords is None or params.star(*coords) not in window:
            return InclusionReport(False, i + half, x)
    return InclusionReport(True, n_points)


# ---------------------------------------------------------------------------
# substitution matrices
# ---------------------------------------------------------------------------


def _is_primitive(rows: list[list[int]]) -> bool:
    k = len(rows)
    if k == 1:
        # a single letter with a one-letter image never grows
        return rows[0][0] > 1
    pattern = [[1 if v else 0 for v in r] for r in rows]
    power = pattern
    for _ in range(k * k):
        if all(all(r) for r in power):
            return True
        power = [[1 if any(power[i][m] and pattern[m][j] for m in range(k)) else 0 for j in range(k)] for i in range(k)]
    return False


def _dominant_root(rows: list[list[int]]):
    """Perron eigenvalue as an exact rational or quadratic number."""
    x = sympy.Symbol("x")
    poly = sympy.Matrix(rows).charpoly(x).as_expr()
    best, best_factor = None, None
    for fac, _ in sympy.factor_list(poly, x)[1]:
        for r in sympy.Poly(fac, x).nroots(n=30):
            if r.is_real and (best is None or r > best):
                best, best_factor = r, fac
    p = sympy.Poly(best_factor, x)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in p.all_coeffs()]
    if p.degree() == 1:
        return QuadraticReal(-coeffs[1] / coeffs[0])
    if p.degree() == 2:
        a, b, c = coeffs
        root = (-b + qsqrt(b * b - 4 * a * c)) / (2 * a)
        return root if abs(float(root) - float(best)) < 1e-9 else (-b - qsqrt(b * b - 4 * a * c)) / (2 * a)
    raise ValueError(f"dominant eigenvalue has degree {p.degree()}; only degrees 1 and 2 are exact here")


def _null_vector(rows: list[list], lam) -> list:
    """Non-zero solution of ``(rows - lam*I) y = 0`` by exact elimination."""
    k = len(rows)
    a = [[QuadraticReal(rows[i][j]) - (lam if i == j else 0) for j in range(k)] for i in range(k)]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, k) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col].reciprocal()
        a[r] = [v * inv for v in a[r]]
        for i in range(k):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(k) if c not in pivots]
    if not free:
        raise ArithmeticError("eigenvalue has a trivial eigenspace")
    y = [QuadraticReal(0)] * k
    y[free[0]] = QuadraticReal(1)
    for i, col in enumerate(pivots):
        y[col] = -a[i][free[0]]
    return y


@dataclass(frozen=True)
class SubstitutionMatrix:
    alphabet: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]
    primitive: bool

    def eigenvalue(self):
        return _dominant_root([list(r) for r in self.rows])

    def right_eigenvector(self) -> list:
        """Positive right eigenvector scaled so its smallest entry is 1."""
        lam = self.eigenvalue()
        y = _null_vector([list(r) for r in self.rows], lam)
        if y[0] < 0:
            y = [-v for v in y]
        low = min(y)
        return [v / low for v in y]

    def left_eigenvector(self) -> list:
        """Positive left eigenvector summing to 1 (the letter densities)."""
        lam = self.eigenvalue()
        cols = [list(c) for c in zip(*self.rows)]
        y = _null_vector(cols, lam)
        total = sum(y[1:], y[0])
        return [v / total for v in y]


def substitution_matrix(m: Morphism) -> SubstitutionMatrix:
    rows = m.matrix()
    return SubstitutionMatrix(m.alphabet, tuple(map(tuple, rows)), _is_primitive(rows))


@dataclass(frozen=True)
class GeometricRepresentation:
    matrix: SubstitutionMatrix
    eigenvalue: QuadraticReal
    lengths: dict
    word: str
    points: list
    self_similar: bool


def geometric_representation(m: Morphism, n_points: int = 1000, letter: str | None = None) -> GeometricRepresentation:
    """Tile lengths from the Perron eigenvector and the points ``z_n`` of the fixed point.

    ``z_0 = 0`` and ``z_{n+1} - z_n`` is the length of letter ``u_n``; the
    inclusion ``lambda * {z_n} ⊆ {z_n}`` is checked on the computed prefix.
    """
    mat = substitution_matrix(m)
    if not mat.primitive:
        raise ValueError("morphism is not primitive")
    lam = mat.eigenvalue()
    lengths = dict(zip(m.alphabet, mat.right_eigenvector()))
    if letter is None:
        letter = next((a for a in m.alphabet if m.images[a].startswith(a) and len(m.images[a]) > 1), None)
        if letter is None:
            raise ValueError("no letter seeds a fixed point")
    word = fixed_prefix(m, letter, n_points)
    z = [QuadraticReal(0)]
    for a in word:
        z.append(z[-1] + lengths[a])
    members = set(z)
    top = z[-1]
    ok = all(lam * x in members for x in z if lam * x <= top)
    return GeometricRepresentation(mat, lam, lengths, word, z, ok)
