"""Dunkl, Polychronakos and Heckman operators, the quantum integrals built from
them, the Dunkl pairing and Gaussian-conjugated actions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .core import MultiPoly, Permutation, Q, power_sum, root_pairs
from .errors import NotSymmetric
from .operalg import (
    DiffOp,
    RationalFn,
    SkewElement,
    collapse,
    commutator,
    compose,
    rsum,
)
from .symmetric import power_sum_decomposition


@dataclass(frozen=True)
class CouplingParams:
    """Number of particles N and coupling c (the multiplicity m when integral)."""

    N: int
    c: mpq = mpq(0)

    def __init__(self, N: int, c=0):
        if N < 1:
            raise ValueError("N must be at least 1")
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "c", Q(c))

    @property
    def m(self) -> int:
        """The coupling as a nonnegative integer; ValueError otherwise."""
        if self.c.denominator != 1 or self.c < 0:
            raise ValueError(f"coupling {self.c} is not a nonnegative integer")
        return int(self.c)

    @property
    def is_integral(self) -> bool:
        return self.c.denominator == 1 and self.c >= 0


def _params(params) -> CouplingParams:
    if isinstance(params, CouplingParams):
        return params
    N, c = params
    return CouplingParams(N, c)


# -- skew elements -----------------------------------------------------------

def dunkl(i: int, params) -> SkewElement:
    """D_i = d_i + c sum_{j != i} (s_ij - 1)/(x_i - x_j)."""
    p = _params(params)
    n, c = p.N, p.c
    if not 0 <= i < n:
        raise IndexError(f"index {i} out of range for N={n}")
    ident = Permutation.identity(n)
    base = DiffOp.partial(n, i)
    parts = {}
    for j in range(n):
        if j == i or not c:
            continue
        coef = RationalFn.inv_root(n, i, j, 1, c)
        base = base - DiffOp.multiplication(coef)
        parts[Permutation.transposition(n, i, j)] = DiffOp.multiplication(coef)
    parts[ident] = base
    return SkewElement(n, parts)


def polychronakos(i: int, params) -> SkewElement:
    """pi_i = x_i D_i."""
    p = _params(params)
    xi = MultiPoly.var(p.N, i)
    d = dunkl(i, p)
    return SkewElement(p.N, {w: op.left_multiply(xi) for w, op in d.parts.items()})


def heckman(i: int, params) -> SkewElement:
    """x_i d_i - (c/2) sum_{j != i} (x_i + x_j)/(x_i - x_j) (1 - s_ij)."""
    p = _params(params)
    n, c = p.N, p.c
    if not 0 <= i < n:
        raise IndexError(f"index {i} out of range for N={n}")
    base = DiffOp.euler(n, [i])
    parts = {}
    for j in range(n):
        if j == i or not c:
            continue
        num = MultiPoly.var(n, i) + MultiPoly.var(n, j)
        coef = RationalFn(num.scale(c / 2), {(i, j): 1})
        base = base - DiffOp.multiplication(coef)
        parts[Permutation.transposition(n, i, j)] = DiffOp.multiplication(coef)
    parts[Permutation.identity(n)] = base
    return SkewElement(n, parts)


def skew_power_sum(ops: list, k: int) -> SkewElement:
    n = ops[0].nvars
    if k == 0:
        return SkewElement.identity(n).scale(len(ops))
    total = SkewElement.zero(n)
    for op in ops:
        total = total + op ** k
    return total


def commuting_polynomial(p: MultiPoly, ops: list) -> SkewElement:
    """p(ops) for pairwise commuting skew elements, by monomial expansion."""
    n = ops[0].nvars
    memo = {(0,) * len(ops): SkewElement.identity(n)}

    def mono(e):
        if e not in memo:
            i = next(k for k, a in enumerate(e) if a)
            prev = e[:i] + (e[i] - 1,) + e[i + 1:]
            memo[e] = ops[i] * mono(prev)
        return memo[e]

    total = SkewElement.zero(n)
    for e, c in sorted(p.terms.items()):
        total = total + mono(e).scale(c)
    return total


# -- explicit operators ------------------------------------------------------

def euler_operator(n: int) -> DiffOp:
    return DiffOp.euler(n)


@lru_cache(maxsize=64)
def cm_operator(params) -> DiffOp:
    """L = Laplacian - sum_{i<j} 2c/(x_i - x_j) (d_i - d_j)."""
    p = _params(params)
    n = p.N
    op = DiffOp.zero(n)
    for i in range(n):
        op = op + DiffOp.partial(n, i, 2)
    for i, j in root_pairs(n):
        if p.c:
            coef = RationalFn.inv_root(n, i, j, 1, 2 * p.c)
            op = op - (DiffOp.partial(n, i) - DiffOp.partial(n, j)).left_multiply(coef)
    return op


@lru_cache(maxsize=64)
def trig_cm_operator(params) -> DiffOp:
    """sum (x_i d_i)^2 - c sum_{i<j} (x_i + x_j)/(x_i - x_j) (x_i d_i - x_j d_j)."""
    p = _params(params)
    n = p.N
    op = DiffOp.zero(n)
    for i in range(n):
        e = DiffOp.euler(n, [i])
        op = op + compose(e, e)
    for i, j in root_pairs(n):
        if p.c:
            num = (MultiPoly.var(n, i) + MultiPoly.var(n, j)).scale(p.c)
            coef = RationalFn(num, {(i, j): 1})
            op = op - (DiffOp.euler(n, [i]) - DiffOp.euler(n, [j])).left_multiply(coef)
    return op


def harmonic_cm_operator(params) -> DiffOp:
    """L - E, the Hermite-type operator whose eigenvalues are minus the degree."""
    p = _params(params)
    return cm_operator(p) - DiffOp.euler(p.N)


# -- quantum integrals -------------------------------------------------------

def _require_symmetric(p: MultiPoly):
    if not p.is_symmetric():
        raise NotSymmetric("expected a symmetric polynomial")


@lru_cache(maxsize=256)
def trig_power_integral(k: int, params) -> DiffOp:
    """collapse(sum_i pi_i^k)."""
    p = _params(params)
    if k == 0:
        return DiffOp.identity(p.N).scale(p.N)
    pis = [polychronakos(i, p) for i in range(p.N)]
    return collapse(skew_power_sum(pis, k))


def _from_power_sums(p: MultiPoly, params, factor) -> DiffOp:
    n = params.N
    total = DiffOp.zero(n)
    for mu, c in sorted(power_sum_decomposition(p).items()):
        op = DiffOp.identity(n)
        for r in mu:
            op = compose(op, factor(r, params))
        total = total + op.scale(c)
    return total


def build_trig_integral(p: MultiPoly, params) -> DiffOp:
    """The differential operator acting as p(pi_1..pi_N) on symmetric polynomials.

    p is written in power sums p_r; each p_r maps to collapse(sum pi_i^r) and
    products map to compositions."""
    params = _params(params)
    _require_symmetric(p)
    return _from_power_sums(p, params, trig_power_integral)


@lru_cache(maxsize=256)
def rat_power_integral(k: int, params) -> DiffOp:
    """collapse(sum_i D_i^k)."""
    p = _params(params)
    if k == 0:
        return DiffOp.identity(p.N).scale(p.N)
    ds = [dunkl(i, p) for i in range(p.N)]
    return collapse(skew_power_sum(ds, k))


def build_rat_integral(p: MultiPoly, params) -> DiffOp:
    """collapse(p(D_1..D_N)), expanded directly over monomials."""
    params = _params(params)
    _require_symmetric(p)
    if p.degree() <= 0:
        return DiffOp.identity(params.N).scale(p.constant_term())
    ds = [dunkl(i, params) for i in range(params.N)]
    return collapse(commuting_polynomial(p, ds))


def bch_series(op: DiffOp, L: DiffOp, depth: int) -> DiffOp:
    """sum_{k<=depth} [..[op, L].., L] / (2^k k!)."""
    total = op
    term = op
    for k in range(1, depth + 1):
        term = commutator(term, L)
        if not term:
            break
        total = total + term.scale(mpq(1, 2 ** k * factorial(k)))
    return total


def build_harmonic_integral(p: MultiPoly, params) -> DiffOp:
    """e^{-L/2} L_p e^{L/2} written as the terminating commutator series."""
    params = _params(params)
    _require_symmetric(p)
    return bch_series(build_trig_integral(p, params), cm_operator(params), max(p.degree(), 0))


def conjugate_apply(op: DiffOp, L: DiffOp, f: MultiPoly, inner: int = 1, outer: int = -1) -> MultiPoly:
    """e^{outer L/2} op e^{inner L/2} f using truncated exponential series."""
    g = exp_apply(L, f, mpq(inner, 2))
    return exp_apply(L, op.apply(g), mpq(outer, 2))


def exp_apply(L: DiffOp, f: MultiPoly, t) -> MultiPoly:
    """e^{tL} f for a degree-lowering L (terminating series)."""
    t = Q(t)
    total = f
    term = f
    k = 0
    while True:
        k += 1
        term = L.apply(term)
        if isinstance(term, RationalFn):
            term = term.to_poly()
        if not term:
            return total
        term = term.scale(t / k)
        total = total + term


# -- Dunkl action on polynomials --------------------------------------------

def dunkl_apply(i: int, f: MultiPoly, c, idx=None) -> MultiPoly:
    """D_i f with exact division of the divided differences.

    ``idx`` lists the variables the Dunkl operators act in (default: all)."""
    c = Q(c)
    idx = list(range(f.nvars)) if idx is None else list(idx)
    a = idx[i]
    out = f.diff(a)
    if c:
        for b in idx:
            if b == a:
                continue
            diffq = f.swap(a, b) - f
            if diffq:
                out = out + diffq.divide_by_root(a, b).scale(c)
    return out


def dunkl_poly_apply(p: MultiPoly, f: MultiPoly, c, idx=None) -> MultiPoly:
    """p(D) f for any polynomial p (the D_i commute)."""
    memo = {(0,) * p.nvars: f}

    def mono(e):
        if e not in memo:
            i = next(k for k, a in enumerate(e) if a)
            prev = e[:i] + (e[i] - 1,) + e[i + 1:]
            g = mono(prev)
            memo[e] = dunkl_apply(i, g, c, idx) if g else g
        return memo[e]

    total = MultiPoly.zero(f.nvars)
    top = f.degree() if idx is None else f.partial_degree(idx)
    for e, coef in p.terms.items():
        if sum(e) > top:
            continue
        total = total + mono(e).scale(coef)
    return total


def djo_form(p: MultiPoly, q: MultiPoly, params) -> mpq:
    """[p, q] = (p(D) q)(0)."""
    params = _params(params)
    if p.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    return dunkl_poly_apply(p, q, params.c).constant_term()


# -- Gaussian conjugation ----------------------------------------------------

def _gauss_shift(f: MultiPoly, i: int) -> MultiPoly:
    """Cofactor of d_i (f e^{-x^2/2})."""
    return f.diff(i) - f * MultiPoly.var(f.nvars, i)


def gaussian_apply(e, Q_: MultiPoly) -> MultiPoly:
    """Cofactor of e^{-x^2/2} in e(Q e^{-x^2/2}) for a DiffOp or SkewElement e."""
    if isinstance(e, DiffOp):
        e = SkewElement.from_diffop(e)
    n = e.nvars
    items = []
    for w, op in e.parts.items():
        g = Q_.permute(w)
        memo = {(0,) * n: g}

        def shifted(beta):
            if beta not in memo:
                i = next(k for k, a in enumerate(beta) if a)
                prev = beta[:i] + (beta[i] - 1,) + beta[i + 1:]
                memo[beta] = _gauss_shift(shifted(prev), i)
            return memo[beta]

        for beta, c in op.terms.items():
            items.append(c * shifted(beta))
    return rsum(items, n).simplify()


def gaussian_dunkl_apply(i: int, f: MultiPoly, c) -> MultiPoly:
    """Cofactor of D_i (f e^{-x^2/2}); the Gaussian is symmetric."""
    return dunkl_apply(i, f, c) - f * MultiPoly.var(f.nvars, i)


def gaussian_dunkl_poly(p: MultiPoly, f: MultiPoly, c) -> MultiPoly:
    """Cofactor of p(D)(f e^{-x^2/2})."""
    n = f.nvars
    memo = {(0,) * n: f}

    def mono(e):
        if e not in memo:
            i = next(k for k, a in enumerate(e) if a)
            prev = e[:i] + (e[i] - 1,) + e[i + 1:]
            memo[e] = gaussian_dunkl_apply(i, mono(prev), c)
        return memo[e]

    total = MultiPoly.zero(n)
    for e, coef in p.terms.items():
        total = total + mono(e).scale(coef)
    return total


__all__ = [
    "CouplingParams",
    "dunkl",
    "polychronakos",
    "heckman",
    "skew_power_sum",
    "commuting_polynomial",
    "euler_operator",
    "cm_operator",
    "trig_cm_operator",
    "harmonic_cm_operator",
    "trig_power_integral",
    "build_trig_integral",
    "rat_power_integral",
    "build_rat_integral",
    "bch_series",
    "build_harmonic_integral",
    "conjugate_apply",
    "exp_apply",
    "dunkl_apply",
    "dunkl_poly_apply",
    "djo_form",
    "gaussian_apply",
    "gaussian_dunkl_apply",
    "gaussian_dunkl_poly",
    "power_sum",
]
