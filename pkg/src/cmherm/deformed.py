"""Two-species deformed CM operators in variables (z_1..z_N1, w_1..w_N2), their
realisation by restriction from N = k N1 + N2 particles at coupling 1/k, the
deformed Newton sums, generalised quasi-invariants and the deformed
Hermitisation."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from gmpy2 import mpq

from .cherednik import (
    CouplingParams,
    cm_operator,
    euler_operator,
    exp_apply,
    trig_cm_operator,
)
from .core import MultiPoly, Permutation, Q, monomials_of_degree, power_sum
from .errors import ExtensionFailed, NotDivisible
from .linalg import nullspace, solve_any
from .operalg import DiffOp, RationalFn
from .reports import Report
from .symmetric import partitions


@dataclass(frozen=True)
class DeformedParams:
    N1: int
    N2: int
    k: mpq

    def __init__(self, N1: int, N2: int, k):
        k = Q(k)
        if N1 < 1 or N2 < 1:
            raise ValueError("N1 and N2 must be at least 1")
        if not k:
            raise ValueError("k must be nonzero")
        object.__setattr__(self, "N1", N1)
        object.__setattr__(self, "N2", N2)
        object.__setattr__(self, "k", k)

    @property
    def nvars(self) -> int:
        return self.N1 + self.N2

    @property
    def is_integral(self) -> bool:
        return self.k.denominator == 1 and self.k >= 1

    @property
    def int_k(self) -> int:
        if not self.is_integral:
            raise ValueError(f"this operation needs a positive integer k, got {self.k}")
        return int(self.k)

    @property
    def N(self) -> int:
        return self.int_k * self.N1 + self.N2

    def z(self, i: int) -> int:
        return i

    def w(self, j: int) -> int:
        return self.N1 + j

    def names(self) -> list:
        return [f"z{i + 1}" for i in range(self.N1)] + [f"w{j + 1}" for j in range(self.N2)]


def deformed_newton(r: int, dp: DeformedParams) -> MultiPoly:
    """k sum z_i^r + sum w_j^r."""
    n = dp.nvars
    if r == 0:
        return MultiPoly.const(n, dp.k * dp.N1 + dp.N2)
    out = MultiPoly.zero(n)
    for i in range(dp.N1):
        out = out + MultiPoly.var(n, dp.z(i)) ** r * dp.k
    for j in range(dp.N2):
        out = out + MultiPoly.var(n, dp.w(j)) ** r
    return out


def newton_product(mu, dp: DeformedParams) -> MultiPoly:
    out = MultiPoly.one(dp.nvars)
    for r in mu:
        out = out * deformed_newton(r, dp)
    return out


# -- operators -----------------------------------------------------------------

def _pairs(dp: DeformedParams):
    zz = [(dp.z(a), dp.z(b)) for a in range(dp.N1) for b in range(a + 1, dp.N1)]
    ww = [(dp.w(a), dp.w(b)) for a in range(dp.N2) for b in range(a + 1, dp.N2)]
    zw = [(dp.z(a), dp.w(b)) for a in range(dp.N1) for b in range(dp.N2)]
    return zz, ww, zw


@lru_cache(maxsize=64)
def deformed_rational(dp: DeformedParams) -> DiffOp:
    n, kinv = dp.nvars, 1 / dp.k
    d = lambda i: DiffOp.partial(n, i)  # noqa: E731
    op = DiffOp.zero(n)
    for i in range(dp.N1):
        op = op + DiffOp.partial(n, dp.z(i), 2).scale(kinv)
    for j in range(dp.N2):
        op = op + DiffOp.partial(n, dp.w(j), 2)
    zz, ww, zw = _pairs(dp)
    for a, b in zz:
        op = op - (d(a) - d(b)).left_multiply(RationalFn.inv_root(n, a, b, 1, 2))
    for a, b in ww:
        op = op - (d(a) - d(b)).left_multiply(RationalFn.inv_root(n, a, b, 1, 2 * kinv))
    for a, b in zw:
        op = op - (d(a).scale(kinv) - d(b)).left_multiply(RationalFn.inv_root(n, a, b, 1, 2))
    return op


@lru_cache(maxsize=64)
def deformed_trig(dp: DeformedParams) -> DiffOp:
    n, kinv = dp.nvars, 1 / dp.k
    e = lambda i: DiffOp.euler(n, [i])  # noqa: E731
    op = DiffOp.zero(n)
    for i in range(dp.N1):
        op = op + (e(dp.z(i)) * e(dp.z(i))).scale(kinv)
    for j in range(dp.N2):
        op = op + e(dp.w(j)) * e(dp.w(j))

    def frac(a, b, c):
        num = (MultiPoly.var(n, a) + MultiPoly.var(n, b)).scale(c)
        return RationalFn(num, {(a, b): 1})

    zz, ww, zw = _pairs(dp)
    for a, b in zz:
        op = op - (e(a) - e(b)).left_multiply(frac(a, b, 1))
    for a, b in ww:
        op = op - (e(a) - e(b)).left_multiply(frac(a, b, kinv))
    for a, b in zw:
        op = op - (e(a).scale(kinv) - e(b)).left_multiply(frac(a, b, 1))
    return op


def deformed_euler(dp: DeformedParams) -> DiffOp:
    return euler_operator(dp.nvars)


_OPERATORS = {"rationalL": deformed_rational, "trigL": deformed_trig, "euler": deformed_euler}


def _poly(f) -> MultiPoly:
    if isinstance(f, RationalFn):
        return f.to_poly()
    return f


def apply_deformed(which: str, f: MultiPoly, dp: DeformedParams) -> MultiPoly:
    """Apply one of the deformed operators; NotDivisible if the image is not polynomial."""
    try:
        build = _OPERATORS[which]
    except KeyError:
        raise ValueError(f"unknown operator {which!r}") from None
    return _poly(build(dp).apply(f))


def chi_deformed(f: MultiPoly, dp: DeformedParams) -> MultiPoly:
    """exp(-L/2) f for the deformed rational operator."""
    return exp_apply(deformed_rational(dp), f, mpq(-1, 2))


# -- restriction from N particles ---------------------------------------------

def restrict_to_plane(p: MultiPoly, dp: DeformedParams) -> MultiPoly:
    """x_{jk+s} -> z_{j+1}, x_{N1 k + i} -> w_i."""
    k, n = dp.int_k, dp.nvars
    images = []
    for j in range(dp.N1):
        images += [MultiPoly.var(n, dp.z(j))] * k
    images += [MultiPoly.var(n, dp.w(i)) for i in range(dp.N2)]
    if len(images) != p.nvars:
        raise ValueError(f"expected a polynomial in {len(images)} variables")
    return p.substitute(images)


def newton_decomposition(f: MultiPoly, dp: DeformedParams) -> dict:
    """Write f as sum_mu c_mu p_mu in deformed Newton sums (mu a partition)."""
    out = {}
    for d, part in f.homogeneous_parts():
        if d == 0:
            out[()] = part.constant_term()
            continue
        mus = partitions(d)
        cols = [newton_product(mu, dp) for mu in mus]
        keys = sorted({e for c in cols for e in c.terms} | set(part.terms))
        rows = [[c.terms.get(e, 0) for c in cols] for e in keys]
        sol = solve_any(rows, [part.terms.get(e, 0) for e in keys])
        if sol is None:
            raise ExtensionFailed("polynomial is not in the deformed Newton algebra")
        for mu, c in zip(mus, sol):
            if c:
                out[mu] = out.get(mu, 0) + c
    return out


def invariant_extension(f: MultiPoly, dp: DeformedParams) -> MultiPoly:
    """A symmetric polynomial in N variables restricting to f."""
    N = dp.N
    total = MultiPoly.zero(N)
    for mu, c in newton_decomposition(f, dp).items():
        term = MultiPoly.const(N, c)
        for r in mu:
            term = term * power_sum(N, r)
        total = total + term
    return total


_GENERATORS = {
    "D2": lambda p: cm_operator(p),
    "xD": lambda p: euler_operator(p.N),
    "xD2": lambda p: trig_cm_operator(p),
}
_MATCHING = {"D2": "rationalL", "xD": "euler", "xD2": "trigL"}


def res_pi_apply(p: MultiPoly, dp: DeformedParams, generator: str) -> MultiPoly:
    """Apply the collapsed Dunkl-built operator (coupling 1/k, N = k N1 + N2)
    to a symmetric p and restrict to the plane.

    generator: "D2" (sum D_i^2), "xD" (sum x_i D_i) or "xD2" (sum (x_i D_i)^2)."""
    try:
        build = _GENERATORS[generator]
    except KeyError:
        raise ValueError(f"unknown generator {generator!r}") from None
    if not p.is_symmetric():
        raise ExtensionFailed("restriction needs a symmetric polynomial")
    params = CouplingParams(dp.N, 1 / dp.k)
    return restrict_to_plane(_poly(build(params).apply(p)), dp)


def check_restriction(p: MultiPoly, dp: DeformedParams, generator: str) -> bool:
    lhs = res_pi_apply(p, dp, generator)
    rhs = apply_deformed(_MATCHING[generator], restrict_to_plane(p, dp), dp)
    return lhs == rhs


# -- generalised quasi-invariants -----------------------------------------------

def lambda_k_membership(q: MultiPoly, dp: DeformedParams) -> bool:
    k = dp.int_k
    n = dp.nvars
    for a in range(dp.N2 - 1):
        if q.swap(dp.w(a), dp.w(a + 1)) != q:
            return False
    for a in range(dp.N1):
        for b in range(a + 1, dp.N1):
            i, j = dp.z(a), dp.z(b)
            diff = q - q.swap(i, j)
            if diff:
                try:
                    diff.divide_by_root(i, j, 2 * k + 1)
                except NotDivisible:
                    return False
    for a in range(dp.N1):
        for b in range(dp.N2):
            i, j = dp.z(a), dp.w(b)
            g = q.diff(i) - q.diff(j).scale(k)
            if g and g.identify(i, j):
                return False
    del n
    return True


def _membership_rows(dp: DeformedParams, monos: list) -> list:
    """Linear conditions on the coefficients for membership in Lambda(k)."""
    k = dp.int_k
    n = dp.nvars
    rows = {}

    def add(tag, col, poly):
        for e, c in poly.terms.items():
            row = rows.setdefault((tag, e), {})
            row[col] = row.get(col, 0) + c

    for col, e in enumerate(monos):
        x = MultiPoly.monomial(e)
        for a in range(dp.N2 - 1):
            add(("w", a), col, x - x.swap(dp.w(a), dp.w(a + 1)))
        for a in range(dp.N1):
            for b in range(a + 1, dp.N1):
                i, j = dp.z(a), dp.z(b)
                diff = x - x.swap(i, j)
                # x_i = x_j + t with t stored in slot i; keep t^0..t^(2k)
                images = [MultiPoly.var(n, v) for v in range(n)]
                images[i] = MultiPoly.var(n, j) + MultiPoly.var(n, i)
                sub = diff.substitute(images).filter_terms(lambda ex: ex[i] <= 2 * k)
                add(("z", a, b), col, sub)
        for a in range(dp.N1):
            for b in range(dp.N2):
                i, j = dp.z(a), dp.w(b)
                add(("zw", a, b), col, (x.diff(i) - x.diff(j).scale(k)).identify(i, j))
    out = []
    for key in sorted(rows):
        row = rows[key]
        if any(row.values()):
            out.append([row.get(c, 0) for c in range(len(monos))])
    return out


def lambda_k_basis(dp: DeformedParams, d: int) -> list:
    """A basis of the degree-d part of Lambda_{N1,N2}(k)."""
    monos = monomials_of_degree(dp.nvars, d)
    rows = _membership_rows(dp, monos)
    return [
        MultiPoly(dp.nvars, {e: c for e, c in zip(monos, v) if c})
        for v in nullspace(rows, len(monos))
    ]


# -- correspondence ----------------------------------------------------------------

def _newton_monomials(dp: DeformedParams, dmax: int) -> list:
    out = []
    for d in range(dmax + 1):
        for mu in partitions(d):
            out.append((mu, newton_product(mu, dp)))
    return out


def verify_deformed_correspondence(dp: DeformedParams, D: int, restriction_degree: int | None = None) -> Report:
    rep = Report(f"deformed correspondence N1={dp.N1} N2={dp.N2} k={dp.k}")
    L = deformed_rational(dp)
    E = deformed_euler(dp)
    for mu, f in _newton_monomials(dp, D):
        h = chi_deformed(f, dp)
        img = _poly((E - L).apply(h))
        rep.add(f"eigen p_{list(mu)}", img == h.scale(sum(mu)), {"image": str(img)}, "(E - L) chi(f) = deg(f) chi(f)")
    if not dp.is_integral:
        return rep
    N = dp.N
    rdeg = D if restriction_degree is None else restriction_degree
    for d in range(rdeg + 1):
        for mu in partitions(d):
            p = MultiPoly.one(N)
            for r in mu:
                p = p * power_sum(N, r)
            for gen in ("D2", "xD", "xD2"):
                rep.add(f"restriction {gen} on p_{list(mu)}", check_restriction(p, dp, gen))
    # K at P(z) = -z is -L + E
    kop = E - L
    for mu, f in _newton_monomials(dp, min(D, 4)):
        ext = invariant_extension(f, dp)
        params = CouplingParams(N, 1 / dp.k)
        full = _poly((euler_operator(N) - cm_operator(params)).apply(ext))
        rep.add(f"K at P=-z on p_{list(mu)}", restrict_to_plane(full, dp) == _poly(kop.apply(f)))
    for d in range(D + 1):
        for q in lambda_k_basis(dp, d):
            Lq = _poly(L.apply(q))
            chi = chi_deformed(q, dp)
            rep.add(
                f"membership preserved degree {d}",
                lambda_k_membership(Lq, dp) and lambda_k_membership(chi, dp),
                {"q": str(q)},
            )
            img = _poly((E - L).apply(chi))
            rep.add(f"eigen on Lambda(k) degree {d}", img == chi.scale(d), {"q": str(q)})
    return rep


__all__ = [
    "DeformedParams",
    "apply_deformed",
    "check_restriction",
    "chi_deformed",
    "deformed_euler",
    "deformed_newton",
    "deformed_rational",
    "deformed_trig",
    "invariant_extension",
    "lambda_k_basis",
    "lambda_k_membership",
    "newton_decomposition",
    "newton_product",
    "res_pi_apply",
    "restrict_to_plane",
    "verify_deformed_correspondence",
]
