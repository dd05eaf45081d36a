"""Acceptance criteria, one test (or a few) per criterion.

Reference values come from the worked examples; comparisons are exact
equality except where a criterion names a sample size.
"""
import random
from fractions import Fraction

import pytest

from aperiodica.betanum import BetaBasis, beta_integers, cap_equivalence, fixed_gap_word
from aperiodica.capcore import BINARY, CapParams, CodedWord, Window, generate, ladder, mechanical, mechanical_config
from aperiodica.exactnum import TAU, QuadraticReal, qsqrt
from aperiodica.selfsim import find_factor, verify_inclusion
from aperiodica.substderive import derive, iterate, merge_letters, verify_projection
from aperiodica.wordcomb import (
    complexity,
    densities,
    dn_breakpoints,
    factors,
    is_balanced,
    rauzy,
    scan_factors,
    sturmian_sweep,
)

EPS = -1 / qsqrt(2)
TERNARY = (CapParams(EPS, -EPS), Window(0, -2 - 4 * EPS))


def q(num, den=1):
    return QuadraticReal(Fraction(num, den))


@pytest.fixture(scope="module")
def derived():
    return derive(*TERNARY)


# 1 ---------------------------------------------------------------------------


@pytest.mark.criterion(1, "worked-example derivation (gamma, S, phi, jumps, seeds, psi)")
def test_derivation(derived):
    r = derived
    assert str(r.gamma) == "3-2*sqrt(2)" and r.gamma == 3 + 4 * EPS
    assert r.points == [0, -1 - 2 * EPS, -3 - 5 * EPS, -EPS]
    assert r.morphism["0"] == "002013"
    assert r.morphism["1"] == "00202"
    assert r.morphism["2"] == "00202013"
    assert r.morphism["3"] == "013"
    assert r.jumps["0"] == 6 and r.jumps["3"] == 3
    assert "|".join(r.initial) == "3|0"
    assert r.projection == {"0": "A", "1": "A", "2": "B", "3": "C"}


# 2 ---------------------------------------------------------------------------


@pytest.mark.criterion(2, "projected fixed point equals the coded word; first iteration rounds")
def test_fixed_point_projection(derived):
    rep = verify_projection(derived, *TERNARY, 10_000)
    assert rep.ok, rep.mismatch
    assert rep.checked == 10_000


@pytest.mark.criterion(2, "projected fixed point equals the coded word; first iteration rounds")
def test_iteration_rounds(derived):
    assert str(iterate(derived.morphism, derived.initial, 1)) == "013|002013"
    assert str(iterate(derived.morphism, derived.initial, 2)) == "00201300202013|0020130020130020201300201300202013"
    w = derived.word(6)
    assert str(w) == "BABAAC|AABAAC"


# 3 ---------------------------------------------------------------------------


@pytest.mark.criterion(3, "letters 0 and 1 merge under the square; merged images")
def test_merge(derived):
    sq = derived.morphism.power(2)
    assert sq["0"] == sq["1"]
    merged = merge_letters(derived.morphism, 2, derived.projection)
    assert merged["A"] == "AABAACAABAACAABABAACAABAACAABABAAC" and len(merged["A"]) == 34
    assert merged["C"] == "AABAACAABABAAC"
    assert merged["B"] == "AABAACAABAACAABABAACAABAACAABABAAC" + "AABAACAABABAAC"


# 4 ---------------------------------------------------------------------------


@pytest.mark.criterion(4, "Fibonacci factor sets L3-L5 and Rauzy graph sizes")
def test_fibonacci():
    params, window = mechanical_config(1 / TAU, 0, "lower")
    assert factors(params, window, 3).renamed(BINARY) == {"010", "011", "101", "110"}
    assert factors(params, window, 4).renamed(BINARY) == {"0101", "0110", "1010", "1011", "1101"}
    assert factors(params, window, 5).renamed(BINARY) == {"01011", "01101", "10101", "10110", "11010", "11011"}
    g3, g4 = rauzy(params, window, 3), rauzy(params, window, 4)
    assert (len(g3.vertices), len(g3.edges)) == (4, 5)
    assert (len(g4.vertices), len(g4.edges)) == (5, 6)


# 5 ---------------------------------------------------------------------------

FIGURE = [
    ["ABAB", "ABAC", "ABBA", "ACAB", "BABA", "BABB", "BACA", "BBAB", "CABA"],
    ["ABAB", "ABAC", "ACAB", "BABA", "BACA", "CABA"],
    ["AACA", "ABAB", "ABAC", "ACAA", "ACAB", "BABA", "BACA", "CAAC", "CABA"],
    ["AACA", "ABAC", "ACAA", "ACAB", "BACA", "CAAC", "CABA"],
    ["AACA", "ABAC", "ACAA", "ACAB", "ACAC", "BACA", "CAAC", "CABA", "CACA"],
    ["AACA", "ACAA", "ACAC", "CAAC", "CACA"],
]


@pytest.mark.criterion(5, "D4 breakpoints and the six factor lists of the figure")
def test_breakpoints():
    eps = -1 / TAU
    pts = dn_breakpoints(eps, 4)
    assert pts == [4 - 2 * TAU, -4 + 3 * TAU, QuadraticReal(1)]
    params = CapParams(eps, TAU)
    lengths, lo = [], max(-eps, 1 + eps)
    for x in pts:
        lengths += [(lo + x) / 2, x]
        lo = x
    got = [factors(params, Window(0, ell), 4).words for ell in lengths]
    assert got == FIGURE
    assert [len(s) for s in got] == [9, 6, 9, 7, 9, 5]


# 6 ---------------------------------------------------------------------------

GENERIC = [
    (CapParams(-1 / TAU, TAU), Window(0, q(7, 10))),
    (CapParams(-1 / TAU, TAU), Window(q(-1, 3), q(9, 10))),
    (CapParams(1 - qsqrt(2), 1 + qsqrt(2)), Window(0, q(4, 5))),
    (CapParams(-1 / qsqrt(3), 1 / qsqrt(3)), Window(q(-1, 7), q(5, 6))),
]


@pytest.mark.criterion(6, "C(n) = 2n+1 generically (checked against 10^5-letter prefixes); n+1 at length 1")
@pytest.mark.parametrize("config", GENERIC)
def test_generic_complexity(config):
    params, window = config
    word = CodedWord(params, window).prefix(100_000)
    for n in range(1, 21):
        rep = complexity(params, window, n)
        assert rep.regime == "generic"
        assert rep.count == 2 * n + 1 == len(scan_factors(word, n))


@pytest.mark.criterion(6, "C(n) = 2n+1 generically (checked against 10^5-letter prefixes); n+1 at length 1")
def test_sturmian_complexity():
    params, window = CapParams(-1 / TAU, TAU), Window(0, 1)
    word = CodedWord(params, window).prefix(100_000)
    for n in range(1, 21):
        assert complexity(params, window, n).count == n + 1 == len(scan_factors(word, n))


# 7 ---------------------------------------------------------------------------


@pytest.mark.criterion(7, "factor densities: at most 5 values, sum 1, mirror invariant")
@pytest.mark.parametrize("config", GENERIC[:2])
def test_densities(config):
    for n in range(1, 16):
        dens = densities(*config, n)
        assert len(set(dens.values())) <= 5
        assert sum(dens.values(), QuadraticReal(0)) == 1
        assert all(dens[w[::-1]] == rho for w, rho in dens.items())


# 8 ---------------------------------------------------------------------------


@pytest.mark.criterion(8, "beta-integers equal C&P sets (tau and beta^2 = 3 beta - 1); gap words are fixed points")
@pytest.mark.parametrize("base", [BetaBasis(TAU), BetaBasis.from_poly(3, 1, "-")])
def test_beta_equivalence(base):
    eq = cap_equivalence(base, 1000)
    conj = base.conjugate()
    form = base.quadratic_form[0]
    expected = Window(-1, 1 - 1 / conj) if form == "+" else Window(0, 1 / conj)
    assert (eq.window.c, eq.window.end) == (expected.c, expected.end)
    ints = beta_integers(base, 2000).points[:1000]
    assert len(ints) == 1000
    word = CodedWord(eq.params, eq.window)
    assert [word.point(i).value for i in range(1000)] == ints
    gaps = beta_integers(base, 2000).word[:999]
    assert gaps == fixed_gap_word(base, 999)


# 9 ---------------------------------------------------------------------------


@pytest.mark.criterion(9, "similarity factors: tau^2 for Fibonacci; a Pisot factor for the three-letter example")
def test_self_similarity():
    fib = CapParams(-1 / TAU, TAU), Window(0, 1)
    f = find_factor(*fib)
    assert f.gamma == TAU**2
    assert verify_inclusion(f, *fib, 1000).ok
    g = find_factor(*TERNARY)
    assert 0 < g.conjugate < 1
    assert verify_inclusion(g, *TERNARY, 1000).ok


# 10 --------------------------------------------------------------------------


@pytest.mark.criterion(10, "sturmian properties P1-P3 and balance for 1/tau and 1/sqrt 2")
@pytest.mark.parametrize("alpha", [1 / TAU, 1 / qsqrt(2)], ids=["inverse-golden", "inverse-sqrt2"])
def test_sturmian(alpha):
    rng = random.Random(20240229)
    for _ in range(10):
        beta = q(rng.randrange(0, 1000), 1000)
        for rep in sturmian_sweep(alpha, beta, 30):
            assert rep.ok, (beta, rep.n, rep)
        assert is_balanced(mechanical(alpha, beta, "upper", range(100_000)), 60)


# 11 --------------------------------------------------------------------------


def gap_set(params, window, n_points=10_000):
    pts = generate(params, window, n_points // 2, n_points - n_points // 2 - 1).points
    return {b.value - a.value for a, b in zip(pts, pts[1:])}


@pytest.mark.criterion(11, "gap set inside a ladder step is the union of the gap sets at its ends")
@pytest.mark.parametrize("eps", [-1 / TAU, EPS], ids=["golden", "sqrt2"])
def test_ladder(eps):
    params = CapParams(eps, 1 - eps)
    levels = ladder(eps, down=3)
    assert len(levels) == 4
    for low, high in zip(levels, levels[1:]):
        mid = (low.length + high.length) / 2
        inside = gap_set(params, Window(0, mid))
        assert len(inside) == 3
        assert inside == gap_set(params, Window(0, low.length)) | gap_set(params, Window(0, high.length))
