from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aperiodica.capcore import BINARY, CapParams, CodedWord, Window, mechanical, mechanical_config
from aperiodica.exactnum import TAU, QuadraticReal, floor, qsqrt
from aperiodica.wordcomb import (
    RauzyEdge,
    RauzyGraph,
    complexity,
    densities,
    dn_breakpoints,
    factor_density,
    factors,
    is_balanced,
    ones_runs,
    rauzy,
    reduce,
    scan_factors,
    special_factors,
    sturmian_checks,
)


def q(num, den=1):
    return QuadraticReal(Fraction(num, den))


# window lengths outside Z[eps]
GENERIC = [
    (CapParams(-1 / TAU, TAU), Window(0, q(7, 10))),
    (CapParams(-1 / TAU, TAU), Window(q(-1, 3), q(9, 10))),
    (CapParams(1 - qsqrt(2), 1 + qsqrt(2)), Window(0, q(4, 5))),
    (CapParams(-1 / qsqrt(3), 1 / qsqrt(3)), Window(q(-1, 7), q(5, 6))),
    (CapParams(TAU - 2, 3 - TAU), Window(0, q(3, 4))),
]


@pytest.fixture(scope="module")
def fib_binary():
    return mechanical_config(1 / TAU, 0, "lower")


@pytest.fixture(scope="module")
def prefixes():
    return [CodedWord(p, w).prefix(100_000) for p, w in GENERIC]


def test_fibonacci_l3(fib_binary):
    assert factors(*fib_binary, 3).renamed(BINARY) == {"010", "011", "101", "110"}


def test_three_distance_alphabet(ternary):
    assert set(factors(*ternary, 1).words) == {"A", "B", "C"}


def test_middle_interval_factors():
    params = CapParams(-1 / TAU, TAU)
    ell = (-4 + 3 * TAU + 1) / 2
    assert factors(params, Window(0, ell), 4).words == sorted(
        ["AACA", "ABAC", "ACAA", "ACAB", "ACAC", "BACA", "CAAC", "CABA", "CACA"]
    )


def test_factor_cells_partition_window():
    params, window = GENERIC[1]
    fs = factors(params, window, 6)
    cells = sorted(fs.cells.values())
    assert cells[0][0] == window.c and cells[-1][1] == window.end
    assert all(a[1] == b[0] for a, b in zip(cells, cells[1:]))


def test_sturmian_complexity():
    params, window = mechanical_config(1 / TAU, 0, "upper")
    rep = complexity(params, window, 7)
    assert rep.count == 8 and rep.regime == "sturmian"


def test_generic_complexity_against_scan(prefixes):
    params, window = GENERIC[0]
    assert complexity(params, window, 4).count == 9 == len(scan_factors(prefixes[0], 4))


def test_eventually_sturmian(ternary):
    params, window = ternary
    rep = complexity(params, window, 3)
    assert rep.regime == "eventually-sturmian"
    n0 = rep.n0
    for n in range(n0 + 1, n0 + 12):
        assert complexity(params, window, n).count == n + n0 + 1


def test_eventually_sturmian_golden():
    params = CapParams(-1 / TAU, TAU)
    window = Window(0, 4 - 2 * TAU)
    rep = complexity(params, window, 1)
    assert rep.regime == "eventually-sturmian"
    word = CodedWord(params, window).prefix(50_000)
    for n in range(1, 15):
        assert len(scan_factors(word, n)) == complexity(params, window, n).expected()


def test_fibonacci_left_special(fib_binary):
    sp = special_factors(*fib_binary, 3, "left")
    assert [s.word.translate(str.maketrans(BINARY)) for s in sp] == ["101"]


@pytest.mark.parametrize("side", ["left", "right"])
def test_complexity_increment_counts_extensions(side):
    params, window = GENERIC[2]
    for n in range(1, 12):
        delta = len(factors(params, window, n + 1)) - len(factors(params, window, n))
        assert delta == sum(len(s.extensions) - 1 for s in special_factors(params, window, n, side))


def test_left_special_by_extension_count():
    params, window = GENERIC[3]
    for n in range(1, 10):
        nxt = factors(params, window, n + 1).words
        by_count = {w for w in factors(params, window, n).words if len({u[0] for u in nxt if u[1:] == w}) > 1}
        assert {s.word for s in special_factors(params, window, n, "left")} == by_count


def test_triple_extension_only_at_short_lengths():
    params = CapParams(-1 / TAU, TAU)
    window = Window(0, q(9, 10))
    short = [max(len(s.extensions) for s in special_factors(params, window, n)) for n in range(1, 4)]
    assert 3 in short
    for n in range(10, 16):
        assert all(len(s.extensions) == 2 for s in special_factors(params, window, n))


def test_densities_sum_and_mirror():
    for params, window in GENERIC:
        for n in (1, 5, 12):
            dens = densities(params, window, n)
            assert sum(dens.values(), QuadraticReal(0)) == 1
            assert all(dens[w[::-1]] == r for w, r in dens.items())


def test_density_of_non_factor():
    params, window = GENERIC[0]
    with pytest.raises(ValueError):
        factor_density(params, window, "CC")


def test_density_matches_frequency():
    params, window = GENERIC[0]
    word = CodedWord(params, window).prefix(1_000_000)
    for w, rho in densities(params, window, 5).items():
        count = sum(1 for i in range(len(word) - 4) if word.startswith(w, i))
        assert abs(count / (len(word) - 4) - float(rho)) < 1e-2


def test_density_value_bounds():
    for params, window in GENERIC:
        for n in range(1, 16):
            assert len(set(densities(params, window, n).values())) <= 5
    params, window = mechanical_config(1 / qsqrt(2), 0, "upper")
    for n in range(10, 16):
        assert len(set(densities(params, window, n).values())) <= 3


def test_fibonacci_rauzy_graphs(fib_binary):
    g3, g4 = rauzy(*fib_binary, 3), rauzy(*fib_binary, 4)
    assert (len(g3.vertices), len(g3.edges)) == (4, 5)
    assert (len(g4.vertices), len(g4.edges)) == (5, 6)


def test_rauzy_degrees_match_extensions():
    params, window = GENERIC[1]
    g = rauzy(params, window, 5)
    left = {s.word: len(s.extensions) for s in special_factors(params, window, 5, "left")}
    right = {s.word: len(s.extensions) for s in special_factors(params, window, 5, "right")}
    for v in g.vertices:
        assert g.in_degree(v) == left.get(v, 1)
        assert g.out_degree(v) == right.get(v, 1)


def test_rauzy_invariants():
    for params, window in GENERIC:
        previous = None
        for n in range(1, 11):
            g = rauzy(params, window, n)
            assert g.is_strongly_connected() and g.conservation_holds()
            degs = g.max_degrees()
            if previous is not None:
                assert degs[0] <= previous[0] and degs[1] <= previous[1]
            previous = degs


def test_reduced_graph_shape():
    for params, window in GENERIC:
        for n in (3, 8, 12):
            red = reduce(rauzy(params, window, n))
            assert 1 <= len(red.vertices) <= 4 and len(red.edges) <= 6
            assert len({e.weight for e in red.edges}) <= 5
            assert red.conservation_holds()


def test_reduced_graph_is_mirror_symmetric():
    import networkx as nx

    params, window = GENERIC[0]
    red = reduce(rauzy(params, window, 7))

    def weighted(g):
        out = nx.MultiDiGraph()
        out.add_nodes_from(g.vertices)
        for e in g.edges:
            out.add_edge(e.source, e.target, w=e.weight)
        return out

    def same_weights(x, y):
        return sorted(str(e["w"]) for e in x.values()) == sorted(str(e["w"]) for e in y.values())

    a = weighted(red)
    assert nx.is_isomorphic(a, a.reverse(), edge_match=same_weights)


def test_chain_contraction():
    half = QuadraticReal(Fraction(1, 2))
    g = RauzyGraph(
        1,
        ["y", "x", "z"],
        [
            RauzyEdge("yx", "y", "x", half),
            RauzyEdge("xz", "x", "z", half),
            RauzyEdge("zy", "z", "y", half),
            RauzyEdge("zz", "z", "z", half),
            RauzyEdge("yy", "y", "y", half),
        ],
    )
    red = reduce(g)
    assert "x" not in red.vertices
    assert any(e.source == "y" and e.target == "z" and e.label == "yxz" and e.weight == half for e in red.edges)


def test_dot_output(fib_binary):
    dot = rauzy(*fib_binary, 2).to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 4
    assert "sqrt(5)" in dot


def test_d4_breakpoints():
    assert dn_breakpoints(-1 / TAU, 4) == [4 - 2 * TAU, -4 + 3 * TAU, QuadraticReal(1)]


def test_d1_is_one():
    for eps in (-1 / TAU, -1 / qsqrt(2), TAU - 2):
        assert dn_breakpoints(eps, 1) == [QuadraticReal(1)]


def test_breakpoints_are_exactly_the_drops():
    eps = -1 / qsqrt(2)
    params = CapParams(eps, -eps)
    pts = dn_breakpoints(eps, 5)
    for x in pts:
        assert len(factors(params, Window(0, x), 5)) < 11
    lo = max(-eps, 1 + eps)
    for a, b in zip([lo] + pts, pts):
        assert len(factors(params, Window(0, (a + b) / 2), 5)) == 11


def test_interior_is_union_of_endpoints():
    params = CapParams(-1 / TAU, TAU)
    a, b = 4 - 2 * TAU, -4 + 3 * TAU
    mid = set(factors(params, Window(0, (a + b) / 2), 4).words)
    assert mid == set(factors(params, Window(0, a), 4).words) | set(factors(params, Window(0, b), 4).words)


def test_sturmian_small_examples(fib_binary):
    l3 = factors(*fib_binary, 3).renamed(BINARY)
    assert sorted(w.count("1") for w in l3) == [1, 2, 2, 2]
    assert sum(1 for w in l3 if w.startswith("1")) == 2


def test_sturmian_report():
    rep = sturmian_checks(1 / TAU, q(1, 3), 8)
    assert rep.ok and len(rep.factors) == 9


def test_balance():
    assert is_balanced(mechanical(1 / qsqrt(2), 0, "lower", range(10_000)), 50)
    assert not is_balanced("0011", 2)


def test_runs_of_ones():
    # slope above 1/2: blocks 0 1^x 0 have x in {b, b+1} with b the integer part of a/(1-a)
    for alpha in (1 / TAU, 1 / qsqrt(2), qsqrt(3) - 1, (qsqrt(5) + 3) / 6):
        b = floor(alpha / (1 - alpha))
        runs = ones_runs(mechanical(alpha, 0, "lower", range(20_000)))
        assert set(runs) <= {b, b + 1}


def test_interval_factors_match_scanned_prefixes(prefixes):
    for (params, window), word in zip(GENERIC, prefixes):
        for n in range(1, 16):
            assert set(factors(params, window, n).words) == scan_factors(word, n)


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=Fraction(31, 50), max_value=1, max_denominator=97), st.fractions(min_value=0, max_value=1, max_denominator=20))
def test_random_windows_against_scan(length, shift):
    # lengths above -eps = 0.618..; rational lengths other than 1 are outside Z[eps]
    params = CapParams(-1 / TAU, TAU)
    ell = QuadraticReal(length)
    window = Window(-ell * QuadraticReal(shift), ell)
    word = CodedWord(params, window).prefix(20_000)
    for n in (1, 4, 9):
        fs = factors(params, window, n)
        assert set(fs.words) == scan_factors(word, n)
        assert len(fs) == (n + 1 if length == 1 else 2 * n + 1)
