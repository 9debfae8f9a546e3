import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqtrig.elliptic import MODULUS_26, Modulus, cn_addition, complete_K, jacobi
from pqtrig.gtrig import ParamPair, sin_pq
from pqtrig.identities import phi
from pqtrig.numerics import DomainError

from conftest import K_SQ_26
from oracles import complete_K_midpoint

K26_REF = 1.5981420021125401445  # mpmath ellipk
FOURTH_ROOT_3 = 3.0**0.25
MODULI = [Modulus.from_k(0.0), MODULUS_26, Modulus.from_k(0.5), Modulus.from_k_sq(0.9)]


def test_modulus_validation():
    assert MODULUS_26.k_sq == pytest.approx(K_SQ_26, rel=1e-15)
    assert MODULUS_26.k_prime**2 + MODULUS_26.k_sq == pytest.approx(1.0, abs=1e-15)
    for bad in (-0.1, 1.0, 2.0):
        with pytest.raises(DomainError):
            Modulus.from_k(bad)
    with pytest.raises(DomainError):
        Modulus.from_k_sq(1.0)


def test_K_values():
    assert complete_K(Modulus.from_k(0.0)) == math.pi / 2
    assert complete_K(MODULUS_26) == pytest.approx(K26_REF, rel=1e-15)
    assert complete_K(MODULUS_26) == pytest.approx(complete_K_midpoint(K_SQ_26), rel=1e-14)


def test_K_matches_pi26():
    pq = ParamPair(2, 6)
    assert complete_K(MODULUS_26) == pytest.approx(FOURTH_ROOT_3 * pq.half_pi, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-6, 0.999))
def test_K_at_least_half_pi(k):
    assert complete_K(Modulus.from_k(k)) > math.pi / 2


@pytest.mark.parametrize("m", MODULI, ids=lambda m: f"k2={m.k_sq:.3g}")
def test_quadratic_identities(m):
    for u in np.linspace(0.0, complete_K(m), 101):
        t = jacobi(u, m)
        assert abs(t.sn**2 + t.cn**2 - 1) <= 1e-12
        assert abs(m.k_sq * t.sn**2 + t.dn**2 - 1) <= 1e-12


@pytest.mark.parametrize("m", MODULI, ids=lambda m: f"k2={m.k_sq:.3g}")
def test_special_points(m):
    t0 = jacobi(0.0, m)
    assert (t0.sn, t0.cn, t0.dn) == (0.0, 1.0, 1.0)
    tk = jacobi(complete_K(m), m)
    assert tk.sn == pytest.approx(1.0, abs=1e-14)
    assert tk.cn == pytest.approx(0.0, abs=1e-7)  # cn ~ k' * dK near K
    assert tk.dn == pytest.approx(m.k_prime, abs=1e-14)
    assert jacobi(2 * complete_K(m), m).cn == pytest.approx(-1.0, abs=1e-14)


def test_circular_degeneration():
    m = Modulus.from_k(0.0)
    for u in np.linspace(-4, 4, 33):
        t = jacobi(u, m)
        assert t.sn == pytest.approx(math.sin(u), abs=1e-15)
        assert t.cn == pytest.approx(math.cos(u), abs=1e-15)
        assert t.dn == 1.0


def test_cn_addition_examples():
    m = MODULUS_26
    K = complete_K(m)
    for u in (0.1, 0.4, 0.7):
        assert cn_addition(u, 0.0, m) == pytest.approx(jacobi(u, m).cn, abs=1e-15)
        assert cn_addition(u, u, m) == pytest.approx(jacobi(2 * u, m).cn, abs=1e-12)
    assert cn_addition(K, K, m) == pytest.approx(-1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_cn_addition_random(a, b):
    m = MODULUS_26
    K = complete_K(m)
    u = a * K
    v = b * (K - u)
    assert abs(cn_addition(u, v, m) - jacobi(u + v, m).cn) <= 1e-11


def test_sin26_representation():
    pq = ParamPair(2, 6)
    u = np.linspace(0.0, pq.half_pi, 300)
    s = sin_pq(pq, u)
    err = [abs(jacobi(2 * FOURTH_ROOT_3 * ui, MODULUS_26).cn - phi(si)) for ui, si in zip(u, s)]
    assert max(err) <= 1e-10
