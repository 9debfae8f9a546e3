import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqtrig.gtrig import (
    ParamPair,
    asin_pq,
    cos_pq,
    parse_exponent,
    pi_pq,
    principal_value,
    sin_pq,
    sincos_pq,
)
from pqtrig.numerics import DomainError

from conftest import GRID_PAIRS, MAIN_PAIRS, SQRT3, pair_id
from oracles import asin_beta, pi_beta, sin_by_bisection

# 20-digit values from mpmath (beta function, then findroot on betainc)
PI_REF = {
    (2.0, 2.0): 3.1415926535897932385,
    (2.0, 6.0): 2.4286506478875816118,
    (1.2, 6.0): 3.8552425933199962621,
    (1.2, 2.0): 7.2859519436627448355,
    (4.0 / 3.0, 4.0): 3.7081493546027438369,
}
SIN26_REF = {0.5: 0.49944280125508899121, 0.6: 0.59800938201517549326, 0.7: 0.69418325249691831816}
SIN652_AT_1_2 = 0.86145412998447358112
F26_AT_HALF = 0.50056158867387028757


def test_parse_exponent():
    assert parse_exponent("6/5") == 1.2
    assert parse_exponent(" 2 ") == 2.0
    assert parse_exponent(4) == 4.0
    for bad in ("", "six", "1/0"):
        with pytest.raises(DomainError):
            parse_exponent(bad)


@pytest.mark.parametrize("p,q", [(1.0, 2.0), (2.0, 1.0), (0.5, 3.0), (math.inf, 2.0), (2.0, math.nan)])
def test_param_pair_rejects_bad_exponents(p, q):
    with pytest.raises(DomainError):
        ParamPair(p, q)


def test_param_pair_conjugates_and_dual():
    pq = ParamPair("6/5", 2)
    assert pq.p_star == pytest.approx(6.0, rel=1e-15)
    assert pq.q_star == 2.0
    assert 1 / pq.p + 1 / pq.p_star == pytest.approx(1.0, abs=1e-15)
    d = pq.dual()
    assert (d.p, d.q) == (pq.q_star, pq.p_star)
    assert str(pq) == "(6/5,2)"
    assert pq == ParamPair(1.2, 2.0)


@pytest.mark.parametrize("pq", GRID_PAIRS, ids=pair_id)
def test_pi_frozen_and_beta(pq):
    params = ParamPair(*pq)
    assert pi_pq(params) == pytest.approx(PI_REF[pq], rel=1e-15, abs=0)
    assert pi_pq(params) == pytest.approx(pi_beta(*pq), rel=1e-14)


def test_pi_22_is_pi():
    assert abs(pi_pq(ParamPair(2, 2)) - math.pi) <= 1e-15


def test_duality_of_pi_constants():
    assert 2 * pi_pq(ParamPair(1.2, 2)) == pytest.approx(6 * pi_pq(ParamPair(2, 6)), rel=1e-14)


def test_landmark_values(grid_pair):
    assert sin_pq(grid_pair, 0.0) == 0.0
    assert cos_pq(grid_pair, 0.0) == 1.0
    assert sin_pq(grid_pair, grid_pair.half_pi) == 1.0
    assert cos_pq(grid_pair, grid_pair.half_pi) == 0.0
    assert sin_pq(grid_pair, grid_pair.pi) == 0.0
    assert cos_pq(grid_pair, grid_pair.pi) == -1.0
    assert sin_pq(grid_pair, 1.5 * grid_pair.pi) == -1.0
    assert asin_pq(grid_pair, 0.0) == 0.0
    assert asin_pq(grid_pair, 1.0) == pytest.approx(grid_pair.half_pi, rel=1e-15)


def test_quarter_period_sextic_power():
    pq = ParamPair(2, 6)
    s = sin_pq(pq, pq.pi / 4)
    assert abs(s**6 - (3 * SQRT3 - 5) / 4) <= 1e-12


@pytest.mark.parametrize("x", sorted(SIN26_REF))
def test_sin26_frozen(x):
    assert sin_pq(ParamPair(2, 6), x) == pytest.approx(SIN26_REF[x], abs=1e-15)


def test_sin652_and_F26_frozen():
    assert sin_pq(ParamPair(1.2, 2), 1.2) == pytest.approx(SIN652_AT_1_2, abs=1e-15)
    assert asin_pq(ParamPair(2, 6), 0.5) == pytest.approx(F26_AT_HALF, abs=1e-15)


def test_cosine_near_quarter_period_is_relatively_accurate():
    # (6/5,2): cos = (1 - s^2)^(5/6) is ~4e-18 at 1e-3 below the quarter period.
    # The double nearest pi/2 - 1e-3 differs from the exact point, so compare at 1e-9.
    pq = ParamPair(1.2, 2)
    c = cos_pq(pq, pq.half_pi - 1e-3)
    assert c == pytest.approx(4.1152263374485596708e-18, rel=1e-9)


@pytest.mark.parametrize("pq", GRID_PAIRS, ids=pair_id)
def test_sin_vs_beta_bisection(pq):
    params = ParamPair(*pq)
    for x in np.linspace(0.05, 0.9 * params.half_pi, 7):
        assert sin_pq(params, x) == pytest.approx(sin_by_bisection(*pq, x), abs=1e-13)


@pytest.mark.parametrize("pq", GRID_PAIRS, ids=pair_id)
def test_asin_vs_incomplete_beta(pq):
    params = ParamPair(*pq)
    s = np.linspace(0.0, 0.99, 12)
    assert np.allclose(asin_pq(params, s), [asin_beta(*pq, v) for v in s], rtol=1e-13, atol=1e-15)


def test_pythagorean_over_two_periods(grid_pair):
    x = np.linspace(-2 * grid_pair.pi, 2 * grid_pair.pi, 2001)
    s, c = sincos_pq(grid_pair, x)
    err = np.abs(np.abs(c) ** grid_pair.p + np.abs(s) ** grid_pair.q - 1.0)
    assert err.max() <= 1e-12
    assert np.all(np.abs(s) <= 1.0) and np.all(np.abs(c) <= 1.0)


def test_oddness_is_bitwise(grid_pair):
    x = np.linspace(0.0, 3 * grid_pair.pi, 301)
    assert np.array_equal(sin_pq(grid_pair, -x), -sin_pq(grid_pair, x))
    assert np.array_equal(cos_pq(grid_pair, -x), cos_pq(grid_pair, x))


def test_periodicity(grid_pair):
    x = np.linspace(-grid_pair.pi, grid_pair.pi, 201)
    for shift in (2 * grid_pair.pi, -4 * grid_pair.pi):
        assert np.max(np.abs(sin_pq(grid_pair, x + shift) - sin_pq(grid_pair, x))) <= 1e-12


def test_reflection(grid_pair):
    x = np.linspace(0.0, grid_pair.half_pi, 101)
    assert np.max(np.abs(sin_pq(grid_pair, grid_pair.pi - x) - sin_pq(grid_pair, x))) <= 1e-13
    assert np.max(np.abs(cos_pq(grid_pair, grid_pair.pi - x) + cos_pq(grid_pair, x))) <= 1e-13


def test_monotone_on_principal_interval(grid_pair):
    s = sin_pq(grid_pair, np.linspace(0.0, grid_pair.half_pi * (1 - 1e-6), 500))
    assert np.all(np.diff(s) > 0)


def test_round_trip(grid_pair):
    # well-conditioned part: the cosine stays above 1e-3, so dx ~ eps / cos
    x_hi = asin_pq(grid_pair, (1.0 - 1e-3**grid_pair.p) ** (1 / grid_pair.q))
    x = np.linspace(0.0, x_hi, 200)
    assert np.max(np.abs(asin_pq(grid_pair, sin_pq(grid_pair, x)) - x)) <= 1e-11


def test_round_trip_spec_example():
    pq = ParamPair(2, 6)
    assert abs(asin_pq(pq, sin_pq(pq, 0.7)) - 0.7) <= 1e-11


def test_finite_difference_derivative(grid_pair):
    h = 1e-6
    # interior points only: no lattice points k * pi/2
    x = np.linspace(0.03, 2 * grid_pair.pi, 97)
    lattice = np.abs(x / grid_pair.half_pi - np.round(x / grid_pair.half_pi)) * grid_pair.half_pi
    x = x[lattice > 0.02]
    fd = (sin_pq(grid_pair, x + h) - sin_pq(grid_pair, x - h)) / (2 * h)
    assert np.max(np.abs(fd - cos_pq(grid_pair, x))) <= 1e-6


def test_circular_case_matches_math():
    pq = ParamPair(2, 2)
    x = np.linspace(-10, 10, 1001)
    s, c = sincos_pq(pq, x)
    assert np.max(np.abs(s - np.sin(x))) <= 1e-12
    assert np.max(np.abs(c - np.cos(x))) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(-50.0, 50.0, allow_nan=False))
def test_scalar_and_array_paths_agree(x):
    pq = ParamPair(2, 6)
    s, c = sincos_pq(pq, x)
    sa, ca = sincos_pq(pq, np.array([x]))
    assert (s, c) == (sa[0], ca[0])


def test_array_shape_preserved():
    pq = ParamPair(2, 6)
    x = np.linspace(0, 1, 6).reshape(2, 3)
    assert sin_pq(pq, x).shape == (2, 3)
    assert asin_pq(pq, np.full((3, 1), 0.5)).shape == (3, 1)


@pytest.mark.parametrize("pq", MAIN_PAIRS, ids=pair_id)
def test_backends_agree(pq, backend):
    params = ParamPair(*pq)
    x = np.linspace(-params.pi, 3 * params.pi, 257)
    s, c = sincos_pq(params, x)
    assert np.max(np.abs(s - sin_by_bisection_vec(pq, x))) <= 1e-13
    assert np.max(np.abs(np.abs(c) ** params.p + np.abs(s) ** params.q - 1)) <= 1e-12


def sin_by_bisection_vec(pq, x):
    # fold with the same symmetries, then invert the beta oracle
    params_pi = PI_REF[pq]
    r = np.mod(x + params_pi, 2 * params_pi) - params_pi
    sign = np.sign(r)
    r = np.abs(r)
    r = np.where(r > params_pi / 2, params_pi - r, r)
    return sign * np.array([sin_by_bisection(*pq, v) for v in r])


def test_principal_value_and_domain_errors():
    pq = ParamPair(2, 6)
    pv = principal_value(pq, 0.5)
    assert pv.c**2 + pv.s**6 == pytest.approx(1.0, abs=1e-15)
    for bad in (-1e-9, pq.half_pi + 1e-9):
        with pytest.raises(DomainError):
            principal_value(pq, bad)
    for bad in (-0.1, 1.0000001, math.nan):
        with pytest.raises(DomainError):
            asin_pq(pq, bad)


def test_non_finite_argument_gives_nan():
    s, c = sincos_pq(ParamPair(2, 6), math.inf)
    assert math.isnan(s) and math.isnan(c)
