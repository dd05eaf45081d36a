from fractions import Fraction

import pytest

from aperiodica.betanum import BetaBasis, fixed_gap_word
from aperiodica.capcore import CapParams, CodedWord, SteppingFn, Window
from aperiodica.exactnum import TAU, QuadraticReal, qsqrt
from aperiodica.morphism import Morphism, fixed_point
from aperiodica.substderive import (
    IND_CAP,
    LengthOutOfRange,
    NotInField,
    NotNormalized,
    NotQuadratic,
    NotSturm,
    OriginOutsideWindow,
    WindowNotLeftClosed,
    closure_set,
    derive,
    g_gamma,
    iterate,
    letter_quotient,
    merge_letters,
    verify_projection,
)

EPS = -1 / qsqrt(2)


def q(num, den=1):
    return QuadraticReal(Fraction(num, den))


CONFIGS = [
    (CapParams(EPS, -EPS), Window(0, -2 - 4 * EPS)),
    (CapParams(-1 / TAU, TAU), Window(0, q(9, 10))),
    (CapParams(-1 / TAU, TAU), Window(q(-1, 3), q(4, 5))),
    (CapParams(1 - qsqrt(2), 1 + qsqrt(2)), Window(0, q(9, 10))),
    (CapParams(-1 + 1 / qsqrt(3), qsqrt(3)), Window(q(-1, 5), q(4, 5))),
]


@pytest.fixture(scope="module")
def worked():
    params, window = CONFIGS[0]
    return derive(params, window)


@pytest.fixture(scope="module")
def worked_fn():
    return SteppingFn(CapParams(EPS, -EPS), Window(0, -2 - 4 * EPS))


@pytest.mark.parametrize(
    "x, value, ind",
    [
        (q(0), q(0), 0),
        (-EPS, -EPS, 2),
        (-3 - 5 * EPS, -1 - 2 * EPS, 4),
    ],
)
def test_g_gamma(worked_fn, x, value, ind):
    assert g_gamma(x, 3 + 4 * EPS, worked_fn) == (value, ind)


def test_g_gamma_outside(worked_fn):
    with pytest.raises(ValueError):
        g_gamma(q(3), 3 + 4 * EPS, worked_fn)


def test_closure_set(worked_fn):
    params, window = CONFIGS[0]
    s = closure_set(params, window, 3 + 4 * EPS)
    assert s == [0, -1 - 2 * EPS, -3 - 5 * EPS, -EPS]
    c, end = window.c, window.end
    assert {c, end - 1 - EPS, c - EPS} <= set(s)
    assert {g_gamma(x, 3 + 4 * EPS, worked_fn)[0] for x in s} <= set(s)


def test_worked_derivation(worked):
    r = worked
    assert r.gamma == 3 + 4 * EPS
    assert dict(r.morphism.images) == {"0": "002013", "1": "00202", "2": "00202013", "3": "013"}
    assert r.jumps["0"] == 6 and r.jumps["3"] == 3
    assert r.initial == ("3", "0")
    assert r.projection == {"0": "A", "1": "A", "2": "B", "3": "C"}
    assert not r.mirrored


def test_worked_iterations(worked):
    r = worked
    assert str(iterate(r.morphism, r.initial, 1)) == "013|002013"
    assert str(iterate(r.morphism, r.initial, 2)) == "00201300202013|0020130020130020201300201300202013"


def test_worked_alignment(worked):
    w = worked.word(6)
    assert w.right == "AABAAC" and w.left == "BABAAC"


def test_json(worked):
    out = worked.to_json()
    assert out["alphabet"] == ["0", "1", "2", "3"]
    assert out["initial"] == ["3", "0"]
    assert out["projection"] == {"0": "A", "1": "A", "2": "B", "3": "C"}


@pytest.mark.parametrize("config", CONFIGS)
def test_projection_theorem(config):
    params, window = config
    r = derive(params, window)
    assert verify_projection(r, params, window, 10_000)
    assert all(i < IND_CAP for i in r.indices.values())


@pytest.mark.parametrize("config", CONFIGS)
def test_cells_partition_window(config):
    params, window = config
    r = derive(params, window)
    pts = r.points
    assert pts[0] == window.c and pts == sorted(pts) and pts[-1] < window.end
    # every point of the images lands in one cell, i.e. images only use known letters
    assert set("".join(r.morphism.images.values())) <= set(r.alphabet)


def test_mirrored_config():
    params, window = CONFIGS[-1]
    r = derive(params, window)
    assert r.mirrored


def test_gamma_power():
    params, window = CONFIGS[1]
    r = derive(params, window, gamma_power=2)
    assert r.gamma == derive(params, window).gamma ** 2
    assert verify_projection(r, params, window, 3000)


def test_golden_beta_integers():
    # tau^2 * Z_tau is the set on tau'^2 * [-1, tau) = [-1/tau^2, 1/tau)
    params = CapParams(-1 / TAU, TAU)
    window = Window(-1 / TAU**2, QuadraticReal(1))
    r = derive(params, window)
    right = r.word(3000).right
    gaps = fixed_gap_word(BetaBasis(TAU), 3000)
    rename = dict(zip(right, gaps))
    assert len(rename) == 2 and right.translate(str.maketrans(rename)) == gaps


def test_merge_worked_example(worked):
    r = worked
    sq = r.morphism.power(2)
    assert sq["0"] == sq["1"]
    merged = merge_letters(r.morphism, 2, r.projection)
    assert merged["A"] == "AABAACAABAACAABABAACAABAACAABABAAC"
    assert merged["C"] == "AABAACAABABAAC"
    assert len(merged["A"]) == 34


def test_merge_is_sound(worked):
    r = worked
    merged = merge_letters(r.morphism, 2, r.projection)
    seed = (r.projection[r.initial[0]], r.projection[r.initial[1]])
    assert fixed_point(merged, seed, 10_000) == r.word(10_000)


def test_merge_without_square(worked):
    rep = letter_quotient(worked.morphism, 1, worked.projection)
    assert len(set(rep.values())) == 4


def test_fibonacci_does_not_merge():
    fib = Morphism.parse("A->AB, B->A")
    assert merge_letters(fib, 3) == fib.power(3)


@pytest.mark.parametrize(
    "params, window, error",
    [
        (CapParams(qsqrt(2) - 2, qsqrt(2)), Window(0, qsqrt(3) / 2), NotInField),
        (CapParams(-1 / TAU, TAU), Window(0, q(9, 10), left_closed=False), WindowNotLeftClosed),
        (CapParams(1 / TAU, TAU), Window(0, q(9, 10)), NotNormalized),
        (CapParams(-1 / TAU, TAU), Window(q(1, 10), q(9, 10)), OriginOutsideWindow),
        (CapParams(-1 / TAU, TAU), Window(0, q(1, 2)), LengthOutOfRange),
        # eps and its conjugate both in (-1, 0)
        (CapParams(q(-1, 2) + qsqrt(2) / 10, TAU), Window(0, q(9, 10)), NotSturm),
    ],
)
def test_preconditions(params, window, error):
    with pytest.raises(error):
        derive(params, window)


def test_rational_eps_rejected():
    from aperiodica.approx import ApproxReal

    params = CapParams(ApproxReal.pi() - 4, TAU)
    with pytest.raises(NotQuadratic):
        derive(params, Window(0, q(9, 10)))
