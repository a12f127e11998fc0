from math import factorial

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from cmherm.core import MultiPoly
from cmherm.hermite1d import (
    c_mn,
    calogero_1d,
    check_cross_construction,
    check_laguerre_relation,
    check_m1_product_rules,
    check_mhermite_properties,
    classical_hermite,
    expected_laguerre_constant,
    is_quasi_invariant_1d,
    laguerre,
    latex_table,
    mhermite,
)

X = sp.Symbol("x")


def to_sympy(p: MultiPoly):
    return sum(sp.Rational(int(c.numerator), int(c.denominator)) * X ** e[0] for e, c in p.terms.items())


def sympy_mhermite(m, n):
    # independent oracle: sympy's Wronskian of x, x^3, ..., x^(2m-1), He_n
    funcs = [X ** (2 * j + 1) for j in range(m)] + [sp.hermite_prob(n, X)]
    W = sp.wronskian(funcs, X)
    e = m * (m - 1) // 2
    norm = X ** e * 2 ** e
    for j in range(1, m):
        norm *= sp.factorial(m - j)
    return sp.expand(sp.cancel(W / norm))


def test_classical_examples():
    x = MultiPoly.var(1, 0)
    assert classical_hermite(0) == MultiPoly.one(1)
    assert classical_hermite(3) == x ** 3 - x.scale(3)
    assert classical_hermite(5) == x ** 5 - (x ** 3).scale(10) + x.scale(15)


@pytest.mark.parametrize("n", range(12))
def test_classical_against_sympy(n):
    assert sp.expand(to_sympy(classical_hermite(n)) - sp.hermite_prob(n, X)) == 0


def test_mhermite_examples():
    x = MultiPoly.var(1, 0)
    assert mhermite(1, 4).H == (x ** 4 - (x ** 2).scale(2) - MultiPoly.one(1)).scale(3)
    assert mhermite(1, 0).H == MultiPoly.const(1, -1)
    assert mhermite(1, 3).H == (x ** 3).scale(2)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 5, 8, 11, 12])
def test_mhermite_against_sympy_wronskian(m, n):
    assert sp.expand(to_sympy(mhermite(m, n).H) - sympy_mhermite(m, n)) == 0


@given(st.integers(0, 3), st.integers(0, 16))
def test_constructions_agree(m, n):
    assert check_cross_construction(m, n).passed


@given(st.integers(0, 3), st.integers(0, 20))
def test_properties(m, n):
    assert check_mhermite_properties(m, n).passed


@given(st.integers(0, 3), st.integers(0, 14))
def test_recurrence_coefficients(m, n):
    # (n - i)(n - i - 1 - 2m) a_i = -(i + 2) a_{i+2} on the monic part
    r = mhermite(m, n)
    if not r.c_mn:
        return
    a = {n - e[0]: c for e, c in r.monic_part.terms.items()}
    for i in range(0, n - 1, 2):
        assert (n - i) * (n - i - 1 - 2 * m) * a.get(i, 0) == -(i + 2) * a.get(i + 2, 0)


def test_c_mn():
    assert c_mn(0, 5) == 1
    assert c_mn(1, 4) == 3
    assert c_mn(2, 3) == 0


def test_quasi_invariance_1d():
    x = MultiPoly.var(1, 0)
    assert is_quasi_invariant_1d(x ** 3, 1)
    assert not is_quasi_invariant_1d(x, 1)
    assert calogero_1d(1, x ** 3) == (x ** 3).scale(3) - (x).scale(6) + (x).scale(6)


def test_laguerre_examples():
    z = MultiPoly.var(1, 0)
    assert laguerre(0, 3) == MultiPoly.one(1)
    alpha = mpq(5, 7)
    assert laguerre(1, alpha) == -z + MultiPoly.const(1, alpha + 1)


@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("alpha", [mpq(-3, 2), mpq(5, 2), mpq(0)])
def test_laguerre_against_sympy(n, alpha):
    a = sp.Rational(int(alpha.numerator), int(alpha.denominator))
    assert sp.expand(to_sympy(laguerre(n, alpha)) - sp.assoc_laguerre(n, a, X)) == 0


@pytest.mark.parametrize("m", range(4))
@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("branch", ["even", "odd"])
def test_laguerre_relation(m, n, branch):
    rep = check_laguerre_relation(m, n, branch)
    assert rep.passed
    assert rep.constant == expected_laguerre_constant(n) == (-2) ** n * factorial(n)


@pytest.mark.parametrize("k", range(2, 12))
def test_m1_product_rules(k):
    assert check_m1_product_rules(k).passed


def test_latex_table_head():
    lines = latex_table(1, 4).split(",\n")
    assert lines[0] == "H_{0}^{(1)} = -1"
    assert lines[2] == "H_{2}^{(1)} = x^2 + 1"
    assert lines[4] == "H_{4}^{(1)} = 3(x^4 - 2x^2 - 1)"


def test_invalid_arguments():
    with pytest.raises(ValueError):
        mhermite(-1, 2)
    with pytest.raises(ValueError):
        mhermite(1, 2, strategy="nope")
