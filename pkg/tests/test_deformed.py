import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from cmherm.core import MultiPoly, power_sum
from cmherm.deformed import (
    DeformedParams,
    apply_deformed,
    chi_deformed,
    check_restriction,
    deformed_newton,
    deformed_rational,
    invariant_extension,
    lambda_k_basis,
    lambda_k_membership,
    newton_decomposition,
    newton_product,
    res_pi_apply,
    restrict_to_plane,
    verify_deformed_correspondence,
)
from cmherm.errors import ExtensionFailed
from cmherm.cherednik import CouplingParams, cm_operator

KS = [2, 3, mpq(1, 2), mpq(5, 3)]
z, w = MultiPoly.gens(2)


def test_newton_sums():
    dp = DeformedParams(1, 1, 3)
    assert deformed_newton(1, dp) == z.scale(3) + w
    assert deformed_newton(0, dp) == MultiPoly.const(2, 4)
    assert deformed_newton(0, DeformedParams(2, 3, mpq(1, 2))) == MultiPoly.const(5, 4)


@pytest.mark.parametrize("k", KS)
def test_operator_examples(k):
    dp = DeformedParams(1, 1, k)
    p1, p2 = deformed_newton(1, dp), deformed_newton(2, dp)
    assert not apply_deformed("rationalL", p2, dp)
    assert not apply_deformed("rationalL", p1, dp)
    assert apply_deformed("euler", p2, dp) == p2.scale(2)


@pytest.mark.parametrize("k", [2, 3])
def test_restriction_of_dunkl_route(k):
    # sum D_i^2 on p_2 in N = k + 1 variables, restricted, against L(p_2)
    dp = DeformedParams(1, 1, k)
    N = dp.N
    L = cm_operator(CouplingParams(N, mpq(1, k)))
    img = L.apply(power_sum(N, 2))
    assert restrict_to_plane(img, dp) == apply_deformed("rationalL", deformed_newton(2, dp), dp)
    assert restrict_to_plane(power_sum(N, 2), dp) == deformed_newton(2, dp)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("gen", ["D2", "xD", "xD2"])
def test_restriction_identities(k, gen):
    dp = DeformedParams(1, 1, k)
    from cmherm.symmetric import power_product

    for mu in [(1,), (2,), (1, 1), (3,), (2, 1), (4,), (2, 2)]:
        P = power_product(mu, dp.N)
        assert restrict_to_plane(P, dp) == newton_product(mu, dp)
        assert check_restriction(P, dp, gen)


def test_non_integer_k_rejected_for_restriction():
    dp = DeformedParams(1, 1, mpq(1, 2))
    with pytest.raises(ValueError):
        restrict_to_plane(MultiPoly.one(2), dp)


def test_membership_examples():
    for k in (2, 3):
        dp = DeformedParams(1, 1, k)
        assert lambda_k_membership(deformed_newton(1, dp), dp)
        assert not lambda_k_membership(z, dp)
        assert lambda_k_membership((z - w) ** 2, dp)


@pytest.mark.parametrize("k", [2, 3])
def test_newton_monomials_are_members(k):
    dp = DeformedParams(1, 1, k)
    for mu in [(1,), (2,), (1, 1), (3,), (2, 1), (3, 1)]:
        assert lambda_k_membership(newton_product(mu, dp), dp)


@pytest.mark.parametrize("k", [2, 3])
def test_lambda_basis_closed_under_operator(k):
    dp = DeformedParams(1, 1, k)
    for d in range(5):
        for q in lambda_k_basis(dp, d):
            assert lambda_k_membership(q, dp)
            assert lambda_k_membership(apply_deformed("rationalL", q, dp), dp)


def test_hermitisation_examples():
    dp = DeformedParams(1, 1, 2)
    p1, p2 = deformed_newton(1, dp), deformed_newton(2, dp)
    one = MultiPoly.one(2)
    assert chi_deformed(p2, dp) == p2
    assert chi_deformed(one, dp) == one
    q = p1 * p1
    assert chi_deformed(q, dp) == q - apply_deformed("rationalL", q, dp).scale(mpq(1, 2))


@pytest.mark.parametrize("k", KS)
@pytest.mark.parametrize("mu", [(2,), (1, 2), (1, 1, 2), (3,), (2, 2)])
def test_eigen_on_newton_monomials(k, mu):
    dp = DeformedParams(1, 1, k)
    f = newton_product(mu, dp)
    h = chi_deformed(f, dp)
    lhs = apply_deformed("euler", h, dp) - apply_deformed("rationalL", h, dp)
    assert lhs == h.scale(sum(mu))


@given(st.sampled_from([2, 3, mpq(1, 2)]), st.dictionaries(st.sampled_from([(1,), (2,), (1, 1), (3,), (2, 1)]), st.integers(-3, 3), min_size=1))
def test_newton_decomposition_round_trip(k, coeffs):
    dp = DeformedParams(1, 1, k)
    f = MultiPoly.zero(2)
    for mu, c in coeffs.items():
        f = f + newton_product(mu, dp).scale(c)
    dec = newton_decomposition(f, dp)
    back = MultiPoly.zero(2)
    for mu, c in dec.items():
        back = back + newton_product(mu, dp).scale(c)
    assert back == f


def test_extension_failure():
    dp = DeformedParams(1, 1, 2)
    with pytest.raises(ExtensionFailed):
        newton_decomposition(z, dp)


def test_invariant_extension_restricts_back():
    dp = DeformedParams(1, 1, 2)
    f = newton_product((2, 1), dp)
    assert restrict_to_plane(invariant_extension(f, dp), dp) == f


def test_two_particle_rational_operator_matches_cm():
    # N1 = N2 = 1, k = 1 is the ordinary two-particle operator at coupling 1
    dp = DeformedParams(1, 1, 1)
    assert deformed_rational(dp) == cm_operator(CouplingParams(2, 1))


@pytest.mark.parametrize("k", [2, 3])
def test_full_correspondence(k):
    assert verify_deformed_correspondence(DeformedParams(1, 1, k), 5).passed


def test_correspondence_two_one():
    assert verify_deformed_correspondence(DeformedParams(2, 1, 2), 3).passed
