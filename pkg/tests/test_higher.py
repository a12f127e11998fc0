from math import factorial

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from cmherm.cherednik import CouplingParams, cm_operator, euler_operator
from cmherm.core import MultiPoly, power_sum
from cmherm.hermite1d import mhermite
from cmherm.hermitemulti import hermitise
from cmherm.higher import (
    GammaData,
    build_Kgamma,
    check_bispectral_recurrences,
    check_gamma_commuting,
    check_gamma_intertwining,
    exp_map,
    gould_hopper,
    p_gamma,
    pkl_series,
)
from cmherm.operalg import DiffOp
from cmherm.quasinv import qbasis

P21 = CouplingParams(2, 1)
GAMMAS = [GammaData(1, [0, -1]), GammaData.monomial(2, mpq(2, 3)), GammaData(3, [0, -1, 0, mpq(2, 3)])]


def test_gamma_validation():
    with pytest.raises(ValueError):
        GammaData(2, [0, 1])
    with pytest.raises(ValueError):
        GammaData(2, [0, 1, 0])
    assert GammaData.from_coefficients({1: -1}) == GammaData(1, [0, -1])


def test_K_examples():
    assert build_Kgamma(GammaData(1, [0, -1]), P21) == euler_operator(2) - cm_operator(P21)
    assert build_Kgamma(GammaData(0, [0]), P21) == euler_operator(2)
    one = CouplingParams(1, 0)
    for l in (1, 2, 3):
        tau = mpq(2, 5)
        x = MultiPoly.var(1, 0)
        want = DiffOp.multiplication(x) * DiffOp.partial(1, 0) + DiffOp.partial(1, 0, l + 1).scale(tau)
        assert build_Kgamma(GammaData.monomial(l, tau), one) == want


def test_hermitisation_is_the_linear_case():
    g = GAMMAS[0]
    for d in range(6):
        for q in qbasis(P21, d):
            assert p_gamma(q, g, P21) == hermitise(q, P21)


def test_low_degree_fixed():
    g = GammaData.monomial(3, 7)
    for d in range(4):
        for q in qbasis(P21, d):
            assert exp_map(q, g, P21) == q


def test_gould_hopper_examples():
    x = MultiPoly.var(1, 0)
    assert gould_hopper(2, 2, 5) == x ** 2
    assert gould_hopper(4, 1, -1) == x ** 4 - (x ** 2).scale(6) + MultiPoly.const(1, 3)
    tau = mpq(3, 7)
    assert gould_hopper(3, 2, tau) == x ** 3 + MultiPoly.const(1, 2 * tau)


@given(st.integers(0, 10), st.integers(1, 3), st.sampled_from([mpq(-1), mpq(2, 3), mpq(5)]))
def test_gould_hopper_is_p_gamma_in_one_variable(n, l, tau):
    one = CouplingParams(1, 0)
    q = MultiPoly.monomial((n,))
    assert p_gamma(q, GammaData.monomial(l, tau), one) == gould_hopper(n, l, tau)


@pytest.mark.parametrize("N,m", [(2, 1), (3, 1), (2, 2)])
@pytest.mark.parametrize("g", GAMMAS, ids=str)
def test_eigen_on_bases(N, m, g):
    params = CouplingParams(N, m)
    for d in range(5):
        for q in qbasis(params, d):
            p_gamma(q, g, params)


def test_commuting_family():
    for g in GAMMAS[:2]:
        assert check_gamma_commuting(g, P21).passed


def test_gamma_intertwining():
    basis = [q for d in range(5) for q in qbasis(P21, d)]
    for g in GAMMAS[:2]:
        for k in (1, 2):
            assert check_gamma_intertwining(power_sum(2, k), g, P21, basis).passed


def test_pkl_matches_mhermite():
    ps = pkl_series(1, 1, -1, 12)
    for k in range(13):
        assert ps[k].scale(factorial(k)) == mhermite(1, k).H


@pytest.mark.parametrize("m", [0, 1, 2])
@pytest.mark.parametrize("l", [1, 2, 3])
@pytest.mark.parametrize("tau", [mpq(-1), mpq(2, 3)])
def test_bispectral_recurrences(m, l, tau):
    assert check_bispectral_recurrences(m, l, tau, 10).passed


def test_recurrence_negative_control():
    # a perturbed series should violate the x^2 rule
    from cmherm import higher

    good = higher.pkl_series
    try:
        higher.pkl_series = lambda m, l, tau, kmax: [
            p + MultiPoly.one(1) if i == 3 else p for i, p in enumerate(good(m, l, tau, kmax))
        ]
        assert not check_bispectral_recurrences(1, 1, -1, 6).passed
    finally:
        higher.pkl_series = good
