"""Higher analogues of the Hermitisation: the operator K = E + sum tau_j L_{j+1},
its polynomial eigenfunctions exp(sum tau_j/(j+1) L_{j+1}) q, Gould-Hopper
polynomials and the one-variable bispectral recurrences."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from gmpy2 import mpq

from .cherednik import (
    CouplingParams,
    _params,
    build_trig_integral,
    dunkl,
    euler_operator,
    exp_apply,
    polychronakos,
    rat_power_integral,
)
from .core import MultiPoly, Q
from .errors import EigenCheckFailed, NonPolynomialResult
from .operalg import DiffOp, RationalFn, SkewElement, collapse, commutator
from .reports import Report


@dataclass(frozen=True)
class GammaData:
    """P(z) = sum_j tau_j z^j of degree l."""

    l: int
    tau: tuple

    def __init__(self, l: int, tau):
        tau = tuple(Q(t) for t in tau)
        if l < 0:
            raise ValueError("l must be nonnegative")
        if len(tau) != l + 1:
            raise ValueError("need exactly l + 1 coefficients")
        if l > 0 and not tau[l]:
            raise ValueError("leading coefficient tau_l must be nonzero")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "tau", tau)

    @classmethod
    def monomial(cls, l: int, tau) -> "GammaData":
        """P(z) = tau z^l."""
        return cls(l, [0] * l + [tau])

    @classmethod
    def from_coefficients(cls, coeffs: dict) -> "GammaData":
        l = max((j for j, c in coeffs.items() if c), default=0)
        return cls(l, [coeffs.get(j, 0) for j in range(l + 1)])

    def __str__(self):
        parts = [f"{t}*z^{j}" for j, t in enumerate(self.tau) if t]
        return " + ".join(parts) or "0"


def _poly(f) -> MultiPoly:
    if isinstance(f, RationalFn):
        if not f.is_poly():
            raise NonPolynomialResult("operator image is not a polynomial")
        return f.to_poly()
    return f


def lowering_operator(gamma: GammaData, params) -> DiffOp:
    """L_gamma = sum_j tau_j L_{j+1}."""
    p = _params(params)
    total = DiffOp.zero(p.N)
    for j, t in enumerate(gamma.tau):
        if t:
            total = total + rat_power_integral(j + 1, p).scale(t)
    return total


def build_Kgamma(gamma: GammaData, params) -> DiffOp:
    p = _params(params)
    return euler_operator(p.N) + lowering_operator(gamma, p)


def exponent_operator(gamma: GammaData, params) -> DiffOp:
    """sum_j tau_j/(j+1) L_{j+1}."""
    p = _params(params)
    total = DiffOp.zero(p.N)
    for j, t in enumerate(gamma.tau):
        if t:
            total = total + rat_power_integral(j + 1, p).scale(t / (j + 1))
    return total


def exp_map(q: MultiPoly, gamma: GammaData, params) -> MultiPoly:
    return exp_apply(exponent_operator(gamma, params), q, 1)


def p_gamma(q: MultiPoly, gamma: GammaData, params) -> MultiPoly:
    """exp(sum tau_j/(j+1) L_{j+1}) q for homogeneous q, checked to be a
    K_gamma eigenfunction with eigenvalue deg q."""
    p = _params(params)
    if q and not q.is_homogeneous():
        raise ValueError("p_gamma expects a homogeneous polynomial")
    P = exp_map(q, gamma, p)
    K = build_Kgamma(gamma, p)
    if _poly(K.apply(P)) != P.scale(max(q.degree(), 0)):
        raise EigenCheckFailed(f"K_gamma P_q != (deg q) P_q for q = {q}")
    return P


def gould_hopper(n: int, l: int, tau) -> MultiPoly:
    """exp((tau/(l+1)) d^{l+1}) x^n from its closed expansion."""
    tau = Q(tau)
    s = l + 1
    out = {}
    for k in range(n // s + 1):
        c = (tau / s) ** k / factorial(k) * factorial(n) / factorial(n - k * s)
        if c:
            out[(n - k * s,)] = c
    return MultiPoly(1, out)


def gamma_pi(i: int, gamma: GammaData, params) -> SkewElement:
    """Image of x_i y_i under x_i -> x_i + P(y_i): pi_i + P(D_i) D_i."""
    p = _params(params)
    d = dunkl(i, p)
    out = polychronakos(i, p)
    power = d
    for t in gamma.tau:
        if t:
            out = out + power.scale(t)
        power = power * d
    return out


def gamma_power_integral(s: int, gamma: GammaData, params) -> DiffOp:
    """collapse(sum_i gamma(pi_i)^s)."""
    p = _params(params)
    total = SkewElement.zero(p.N)
    for i in range(p.N):
        total = total + gamma_pi(i, gamma, p) ** s
    return collapse(total)


def check_gamma_commuting(gamma: GammaData, params, smax: int = 3) -> Report:
    p = _params(params)
    ops = {s: gamma_power_integral(s, gamma, p) for s in range(1, smax + 1)}
    rep = Report(f"commuting family P={gamma} N={p.N} c={p.c}")
    rep.add("lowest member is K_gamma", ops[1] == build_Kgamma(gamma, p))
    for a in range(1, smax + 1):
        for b in range(a + 1, smax + 1):
            rep.add(f"[K{a}, K{b}] = 0", not commutator(ops[a], ops[b]))
    return rep


def check_gamma_intertwining(p: MultiPoly, gamma: GammaData, params, basis: list) -> Report:
    """exp-map(L_p q) = Res gamma(p(pi)) (exp-map q) on the given polynomials, for
    p a power sum or a product of power sums."""
    from .symmetric import power_sum_decomposition

    pr = _params(params)
    conj = DiffOp.zero(pr.N)
    for mu, c in sorted(power_sum_decomposition(p).items()):
        op = DiffOp.identity(pr.N)
        for r in mu:
            op = op * gamma_power_integral(r, gamma, pr)
        conj = conj + op.scale(c)
    trig = build_trig_integral(p, pr)
    rep = Report(f"intertwining P={gamma} p={p}")
    for q in basis:
        lhs = exp_map(_poly(trig.apply(q)), gamma, pr)
        rhs = _poly(conj.apply(exp_map(q, gamma, pr)))
        rep.add(f"q = {q}", lhs == rhs, {"difference": str(lhs - rhs)})
    return rep


# -- one-variable bispectral data -------------------------------------------

def pkl_series(m: int, l: int, tau, kmax: int) -> list:
    """p_0..p_kmax with phi_m(x, t) exp(tau t^(l+1)/(l+1)) = sum_k p_k(x) t^k,
    phi_m = prod_{s=1..m} (x d/dx - 2s + 1) exp(t x)."""
    tau = Q(tau)
    s_ = l + 1
    phi = []
    for a in range(kmax + 1):
        c = mpq(1, factorial(a))
        for s in range(1, m + 1):
            c *= a - 2 * s + 1
        phi.append(c)
    out = []
    for k in range(kmax + 1):
        terms = {}
        for b in range(k // s_ + 1):
            a = k - b * s_
            c = phi[a] * (tau / s_) ** b / factorial(b)
            if c:
                terms[(a,)] = terms.get((a,), 0) + c
        out.append(MultiPoly(1, terms))
    return out


def check_bispectral_recurrences(m: int, l: int, tau, kmax: int) -> Report:
    """The x^2 rule for every m and the x^3 rule for m = 1, for k <= kmax."""
    tau = Q(tau)
    ps = pkl_series(m, l, tau, kmax + 3)
    x = MultiPoly.var(1, 0)

    def P(k):
        return ps[k] if 0 <= k < len(ps) else MultiPoly.zero(1)

    rep = Report(f"bispectral recurrences m={m} l={l} tau={tau}")
    for k in range(kmax + 1):
        lhs = x ** 2 * P(k)
        rhs = (
            P(k + 2).scale((k + 2) * (k - 2 * m + 1))
            + P(k - l + 1).scale(tau * (l - 2 * (k - m + 1)))
            + P(k - 2 * l).scale(tau ** 2)
        )
        rep.add(f"x^2 rule k={k}", lhs == rhs, {"difference": str(lhs - rhs)})
        if m == 1:
            lhs = x ** 3 * P(k)
            rhs = (
                P(k + 3).scale((k + 3) * (k + 1) * (k - 1))
                - P(k - l + 2).scale(tau * (3 * k * k - 3 * k * l + l * l + 3 * k - l - 3))
                + P(k - 2 * l + 1).scale(3 * tau ** 2 * (k - l))
                - P(k - 3 * l).scale(tau ** 3)
            )
            rep.add(f"x^3 rule k={k}", lhs == rhs, {"difference": str(lhs - rhs)})
    return rep


__all__ = [
    "GammaData",
    "build_Kgamma",
    "check_bispectral_recurrences",
    "check_gamma_commuting",
    "check_gamma_intertwining",
    "exp_map",
    "exponent_operator",
    "gamma_pi",
    "gamma_power_integral",
    "gould_hopper",
    "lowering_operator",
    "p_gamma",
    "pkl_series",
]
