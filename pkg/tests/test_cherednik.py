import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from cmherm.cherednik import (
    CouplingParams,
    build_harmonic_integral,
    build_rat_integral,
    build_trig_integral,
    cm_operator,
    djo_form,
    dunkl,
    dunkl_apply,
    euler_operator,
    gaussian_dunkl_poly,
    polychronakos,
    skew_power_sum,
    trig_cm_operator,
)
from cmherm.core import MultiPoly, power_sum
from cmherm.errors import NotSymmetric
from cmherm.hermite1d import classical_hermite
from cmherm.operalg import DiffOp, collapse, commutator
from cmherm.quasinv import is_quasi_invariant, qbasis

from strategies import polys

x1, x2 = MultiPoly.gens(2)
P21 = CouplingParams(2, 1)


def test_dunkl_examples():
    m = mpq(3)
    assert dunkl(0, CouplingParams(2, m)).apply(x1) == MultiPoly.const(2, 1 - m)
    assert not dunkl(0, P21).apply(MultiPoly.const(2, 5))


def test_polychronakos_sum_on_cube():
    q = (x1 - x2) ** 3
    got = polychronakos(0, P21).apply(q) + polychronakos(1, P21).apply(q)
    assert got == q


@given(polys(2), st.sampled_from([0, 1, 2, mpq(1, 2)]))
def test_dunkl_two_routes(f, c):
    params = CouplingParams(2, c)
    for i in range(2):
        assert dunkl(i, params).apply(f) == dunkl_apply(i, f, c)


@pytest.mark.parametrize("N,c", [(2, 1), (3, 1), (3, mpq(1, 2)), (3, 2)])
def test_dunkl_operators_commute(N, c):
    params = CouplingParams(N, c)
    ds = [dunkl(i, params) for i in range(N)]
    for i in range(N):
        for j in range(i + 1, N):
            assert not (ds[i] * ds[j] - ds[j] * ds[i])


@pytest.mark.parametrize("N,c", [(2, 1), (3, 1), (3, mpq(1, 2))])
def test_collapse_identities(N, c):
    params = CouplingParams(N, c)
    pis = [polychronakos(i, params) for i in range(N)]
    ds = [dunkl(i, params) for i in range(N)]
    assert collapse(skew_power_sum(pis, 1)) == euler_operator(N)
    assert collapse(skew_power_sum(pis, 2)) == trig_cm_operator(params)
    assert collapse(skew_power_sum(ds, 2)) == cm_operator(params)
    total = DiffOp.zero(N)
    for i in range(N):
        total = total + DiffOp.partial(N, i)
    assert collapse(skew_power_sum(ds, 1)) == total


def test_integral_builders():
    assert build_trig_integral(power_sum(2, 1), P21) == euler_operator(2)
    assert build_trig_integral(MultiPoly.one(2), P21) == DiffOp.identity(2)
    assert build_rat_integral(power_sum(2, 2), P21) == cm_operator(P21)
    with pytest.raises(NotSymmetric):
        build_trig_integral(x1, P21)


def test_harmonic_integral_examples():
    assert build_harmonic_integral(power_sum(2, 1), P21) == euler_operator(2) - cm_operator(P21)
    free = CouplingParams(2, 0)
    want = DiffOp.zero(2)
    for i in range(2):
        xi = MultiPoly.var(2, i)
        want = want + DiffOp.multiplication(xi) * DiffOp.partial(2, i) - DiffOp.partial(2, i, 2)
    assert build_harmonic_integral(power_sum(2, 1), free) == want


@pytest.mark.parametrize("c", [1, 2, mpq(1, 2)])
def test_harmonic_integrals_commute(c):
    params = CouplingParams(2, c)
    ops = [build_harmonic_integral(power_sum(2, k), params) for k in (1, 2, 3)]
    for a in range(3):
        for b in range(a + 1, 3):
            assert not commutator(ops[a], ops[b])


def test_djo_form_examples():
    one = MultiPoly.one(2)
    assert djo_form(one, one, P21) == 1
    for m in (0, 1, 3, mpq(1, 2)):
        assert djo_form(x1 + x2, x1 + x2, CouplingParams(2, m)) == 2
    assert djo_form((x1 - x2) ** 2, (x1 + x2) ** 2, P21) == 0


def test_gaussian_dunkl():
    one = MultiPoly.one(2)
    assert gaussian_dunkl_poly(x1, one, 1) == -x1
    assert gaussian_dunkl_poly((x1 + x2) ** 2, one, 1) == (x1 + x2) ** 2 - MultiPoly.const(2, 2)
    x = MultiPoly.var(1, 0)
    for n in range(7):
        got = gaussian_dunkl_poly(x ** n, MultiPoly.one(1), 0).scale((-1) ** n)
        assert got == classical_hermite(n)


@pytest.mark.parametrize("N,m,k", [(2, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 2)])
def test_trig_integrals_preserve_quasi_invariants(N, m, k):
    params = CouplingParams(N, m)
    T = build_trig_integral(power_sum(N, k), params)
    for d in range(5):
        for q in qbasis(params, d):
            image = T.apply(q)
            assert isinstance(image, MultiPoly) and is_quasi_invariant(image, m)


def test_self_adjointness_under_both_pairings():
    from cmherm.bafn import canonical_form

    form = canonical_form(P21)
    T = build_trig_integral(power_sum(2, 2), P21)
    for d in range(1, 5):
        B = qbasis(P21, d)
        for a in B:
            for b in B:
                assert form(T.apply(a), b) == form(a, T.apply(b))
                assert djo_form(T.apply(a), b, P21) == djo_form(a, T.apply(b), P21)
