"""Multivariable Hermitisation q -> e^{-L/2} q and its characterisations,
Jack polynomials at negative parameter, symmetric m-Hermite polynomials and
the intertwining check between trigonometric and harmonic integrals."""
from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from .cherednik import (
    CouplingParams,
    _params,
    build_harmonic_integral,
    build_trig_integral,
    cm_operator,
    exp_apply,
    gaussian_dunkl_poly,
    harmonic_cm_operator,
    trig_cm_operator,
)
from .core import MultiPoly, Q
from .errors import NonPolynomialResult, NotQuasiInvariant, NotSymmetric, PoleAtAlpha
from .hermite1d import classical_hermite
from .operalg import RationalFn
from .quasinv import is_quasi_invariant
from .reports import Report
from .symmetric import dominates, monomial_symmetric, partitions, to_monomial_basis


def _poly(f) -> MultiPoly:
    if isinstance(f, RationalFn):
        if not f.is_poly():
            raise NonPolynomialResult("operator image is not a polynomial")
        return f.to_poly()
    return f


def _require_qi(q: MultiPoly, params: CouplingParams) -> None:
    m = params.m
    for _, part in q.homogeneous_parts():
        if not is_quasi_invariant(part, m):
            raise NotQuasiInvariant("input is not quasi-invariant")


def hermitise(q: MultiPoly, params) -> MultiPoly:
    """e^{-L/2} q as the terminating series sum_k (-1/2)^k L^k q / k!."""
    p = _params(params)
    _require_qi(q, p)
    return exp_apply(cm_operator(p), q, mpq(-1, 2))


def hermitise_inverse(h: MultiPoly, params) -> MultiPoly:
    return exp_apply(cm_operator(_params(params)), h, mpq(1, 2))


def hermitise_ladder(q: MultiPoly, params) -> MultiPoly:
    """Lower-degree parts from 2n H^(d-2n) = -L H^(d-2n+2), homogeneous part by part."""
    p = _params(params)
    _require_qi(q, p)
    L = cm_operator(p)
    total = MultiPoly.zero(q.nvars)
    for d, part in q.homogeneous_parts():
        h = part
        total = total + h
        for n in range(1, d // 2 + 1):
            h = _poly(L.apply(h)).scale(mpq(-1, 2 * n))
            if not h:
                break
            total = total + h
    return total


def hermitise_gaussian(q: MultiPoly, params) -> MultiPoly:
    """(-1)^d e^{x^2/2} q(D) e^{-x^2/2} for symmetric q, summed over degrees."""
    p = _params(params)
    if not q.is_symmetric():
        raise NotSymmetric("Gaussian route needs a symmetric polynomial")
    total = MultiPoly.zero(q.nvars)
    one = MultiPoly.one(q.nvars)
    for d, part in q.homogeneous_parts():
        total = total + gaussian_dunkl_poly(part, one, p.c).scale((-1) ** d)
    return total


def product_hermite(mu) -> MultiPoly:
    """prod_i H_{mu_i}(x_i) with classical Hermite factors."""
    n = len(mu)
    out = MultiPoly.one(n)
    for i, k in enumerate(mu):
        h = classical_hermite(k)
        out = out * h.embed(n, [i])
    return out


def check_eigen(q: MultiPoly, params) -> bool:
    """(L - E) H_q = -(deg q) H_q for homogeneous q."""
    p = _params(params)
    H = hermitise(q, p)
    return _poly(harmonic_cm_operator(p).apply(H)) == H.scale(-q.degree())


# -- Jack polynomials ------------------------------------------------------

@lru_cache(maxsize=None)
def _trig_matrix_column(mu: tuple, n: int, c) -> dict:
    op = trig_cm_operator(CouplingParams(n, c))
    return to_monomial_basis(_poly(op.apply(monomial_symmetric(mu, n))))


def jack(lam, alpha, N: int) -> MultiPoly:
    """Monic Jack polynomial P_lam^(alpha) in N variables.

    Built as the eigenfunction of the trigonometric CM operator at coupling
    -1/alpha that is m_lam plus dominated terms. ``alpha=None`` means
    alpha = infinity (returns m_lam). Raises PoleAtAlpha if some dominated
    m_mu has the same diagonal eigenvalue as m_lam."""
    lam = tuple(sorted((a for a in lam if a), reverse=True))
    if len(lam) > N:
        return MultiPoly.zero(N)
    if alpha is None:
        return monomial_symmetric(lam, N)
    alpha = Q(alpha)
    if not alpha:
        raise PoleAtAlpha("alpha = 0")
    c = -1 / alpha
    below = [mu for mu in partitions(sum(lam), max_len=N) if dominates(lam, mu)]
    cols = {mu: _trig_matrix_column(mu, N, c) for mu in below}
    e_lam = cols[lam].get(lam, mpq(0))
    coeffs = {lam: mpq(1)}
    for nu in below:
        if nu == lam:
            continue
        rhs = mpq(0)
        for mu, a in coeffs.items():
            h = cols[mu].get(nu)
            if h:
                rhs += h * a
        gap = e_lam - cols[nu].get(nu, mpq(0))
        if not gap:
            raise PoleAtAlpha(f"P_{lam} has a pole at alpha = {alpha} (eigenvalue clash with m_{nu})")
        if rhs:
            coeffs[nu] = rhs / gap
    out = MultiPoly.zero(N)
    for mu, a in coeffs.items():
        out = out + monomial_symmetric(mu, N).scale(a)
    return out


def jack_coefficients(lam, alpha, N: int) -> dict:
    return to_monomial_basis(jack(lam, alpha, N))


def symmetric_mhermite(lam, m: int, N: int) -> MultiPoly:
    """Hermitisation of the Jack polynomial at alpha = -1/m."""
    alpha = None if m == 0 else mpq(-1, m)
    return hermitise(jack(lam, alpha, N), CouplingParams(N, m))


# -- intertwining and the Jordan block -------------------------------------

def verify_intertwine(p: MultiPoly, q: MultiPoly, params) -> bool:
    """L_p^H (H_q) == H_{L_p q}."""
    pr = _params(params)
    lhs = _poly(build_harmonic_integral(p, pr).apply(hermitise(q, pr)))
    rhs = hermitise(_poly(build_trig_integral(p, pr).apply(q)), pr)
    return lhs == rhs


def jordan_block_demo(l: int, N: int = 2, m: int = 1) -> Report:
    """The trigonometric operator on x1^l x2^l and x1^(l-1) x2^(l-1)(x1^2 + x2^2)."""
    if l < 1:
        raise ValueError("l must be at least 1")
    if N != 2 or m != 1:
        raise ValueError("the demonstration is for N = 2, m = 1")
    op = trig_cm_operator(CouplingParams(2, 1))
    x1, x2 = MultiPoly.gens(2)
    v = (x1 * x2) ** l
    w = (x1 * x2) ** (l - 1) * (x1 ** 2 + x2 ** 2)
    lam = 2 * l * l
    rep = Report(f"Jordan block l={l}")
    img_v = _poly(op.apply(v))
    img_w = _poly(op.apply(w))
    rep.add("eigenvector", img_v == v.scale(lam), {"image": str(img_v)}, "H_2 v = 2 l^2 v")
    rep.add(
        "generalised eigenvector",
        img_w == w.scale(lam) - v.scale(4),
        {"image": str(img_w)},
        "H_2 w = 2 l^2 w - 4 v",
    )
    return rep


__all__ = [
    "check_eigen",
    "hermitise",
    "hermitise_gaussian",
    "hermitise_inverse",
    "hermitise_ladder",
    "jack",
    "jack_coefficients",
    "jordan_block_demo",
    "product_hermite",
    "symmetric_mhermite",
    "verify_intertwine",
]
