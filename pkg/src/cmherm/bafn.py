"""The type-A Baker-Akhiezer function via Berest's formula, with checks of its
defining properties and the generating-function route to Hermite-type
polynomials.

Polynomials live in 2N variables: x_1..x_N at indices 0..N-1 and
l_1..l_N at indices N..2N-1.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from gmpy2 import mpq

from .cherednik import (
    CouplingParams,
    _params,
    build_rat_integral,
    build_trig_integral,
    cm_operator,
    dunkl_poly_apply,
)
from .core import MultiPoly, Permutation, power_sum, root_pairs
from .errors import NonPolynomialResult, NotQuasiInvariant
from .operalg import RationalFn, conj_apply_exp
from .quasinv import arrangement_poly, is_quasi_invariant
from .reports import Report


def ba_names(n: int) -> list:
    return [f"x{i + 1}" for i in range(n)] + [f"l{i + 1}" for i in range(n)]


def x_idx(n: int) -> list:
    return list(range(n))


def lam_idx(n: int) -> list:
    return list(range(n, 2 * n))


def swap_blocks(P: MultiPoly, n: int) -> MultiPoly:
    """P(l, x) from P(x, l)."""
    return P.permute(Permutation(list(range(n, 2 * n)) + list(range(n))))


def pairing_series(n: int, d: int) -> MultiPoly:
    """(x, l)^d / d! in 2N variables."""
    dot = MultiPoly.zero(2 * n)
    for i in range(n):
        dot = dot + MultiPoly.var(2 * n, i) * MultiPoly.var(2 * n, n + i)
    return (dot ** d).scale(mpq(1, factorial(d)))


@dataclass(frozen=True)
class BAFunction:
    """phi(x, l) = P(x, l) exp((x, l))."""

    P: MultiPoly
    params: CouplingParams
    total_mult: int
    phi00: mpq

    @property
    def N(self) -> int:
        return self.params.N

    def to_json_obj(self) -> dict:
        return {
            "P": self.P.to_json_obj(ba_names(self.N)),
            "phi00": str(self.phi00),
            "total_mult": self.total_mult,
            "N": self.N,
            "m": self.params.m,
        }

    @classmethod
    def from_json_obj(cls, obj) -> "BAFunction":
        return cls(
            MultiPoly.from_json_obj(obj["P"]),
            CouplingParams(obj["N"], obj["m"]),
            int(obj["total_mult"]),
            mpq(obj["phi00"]),
        )


def berest_ba(params) -> BAFunction:
    """(2^M M!)^{-1} (L - l^2)^M (A_m(x)^2 e^{(l,x)}), M = m N(N-1)/2."""
    p = _params(params)
    n, m = p.N, p.m
    M = m * n * (n - 1) // 2
    A = arrangement_poly(p)
    cur = (A * A).embed(2 * n, x_idx(n))
    lam2 = power_sum(n, 2).embed(2 * n, lam_idx(n))
    L = cm_operator(p)
    for _ in range(M):
        cur = _sub_lam2(conj_apply_exp(L, cur), cur, lam2)
    if isinstance(cur, RationalFn):
        if not cur.is_poly():
            raise NonPolynomialResult("Berest iteration left a nontrivial denominator")
        cur = cur.to_poly()
    P = cur.scale(mpq(1, 2 ** M * factorial(M)))
    return BAFunction(P, p, M, P.constant_term())


def _as_rf(f):
    return f if isinstance(f, RationalFn) else RationalFn.from_poly(f)


def _sub_lam2(Lf, f, lam2):
    """Lf - l^2 f, kept polynomial when both are."""
    if isinstance(Lf, MultiPoly) and isinstance(f, MultiPoly):
        return Lf - lam2 * f
    out = _as_rf(Lf) - _as_rf(f) * lam2
    return out.simplify()


# -- checks ------------------------------------------------------------------

def _shifted_normal_derivative(P: MultiPoly, i: int, j: int, n: int) -> MultiPoly:
    """Cofactor of (d_i - d_j)(P e^{(x,l)})."""
    li = MultiPoly.var(2 * n, n + i)
    lj = MultiPoly.var(2 * n, n + j)
    return P.diff(i) - P.diff(j) + P * (li - lj)


def check_axioms(ba: BAFunction) -> Report:
    n = ba.N
    m = ba.params.m
    P = ba.P
    rep = Report(f"BA axioms N={n} m={m}")
    A = arrangement_poly(ba.params)
    lead = A.embed(2 * n, x_idx(n)) * A.embed(2 * n, lam_idx(n))
    top = P.homogeneous_part(2 * ba.total_mult)
    rep.add("leading term equals A(x)A(l)", top == lead, {"top": str(top)})
    rep.add("no terms above the leading degree", P.degree() == 2 * ba.total_mult, {"degree": P.degree()})
    for i, j in root_pairs(n):
        g = P
        for s in range(1, m + 1):
            k = 1 if s == 1 else 2
            for _ in range(k):
                g = _shifted_normal_derivative(g, i, j, n)
            restricted = g.identify(i, j)
            rep.add(
                f"odd normal derivative {2 * s - 1} vanishes on x{i + 1}=x{j + 1}",
                not restricted,
                {"residue": str(restricted)},
            )
    lam2 = power_sum(n, 2).embed(2 * n, lam_idx(n))
    LP = conj_apply_exp(cm_operator(ba.params), P)
    rep.add("Schroedinger equation L phi = l^2 phi", LP == lam2 * P)
    rep.add("symmetry P(x,l) = P(l,x)", swap_blocks(P, n) == P)
    rep.add(
        "equal x- and l-degree in every term",
        all(sum(e[:n]) == sum(e[n:]) for e in P.terms),
    )
    rep.add("phi(0,0) nonzero", bool(ba.phi00), {"phi00": str(ba.phi00)})
    return rep


def check_Lq_eigen(ba: BAFunction, p: MultiPoly) -> bool:
    """L_p phi = p(l) phi with L_p = collapse(p(D))."""
    n = ba.N
    op = build_rat_integral(p, ba.params)
    lhs = conj_apply_exp(op, ba.P)
    return lhs == p.embed(2 * n, lam_idx(n)) * ba.P


def check_trig_symmetry(ba: BAFunction, p: MultiPoly) -> bool:
    """The trigonometric integral of p gives the same result acting in x or in l."""
    n = ba.N
    op = build_trig_integral(p, ba.params)
    in_x = conj_apply_exp(op, ba.P, x_idx(n), lam_idx(n))
    in_l = conj_apply_exp(op, ba.P, lam_idx(n), x_idx(n))
    return in_x == in_l


def bidegree_component(ba: BAFunction, d: int) -> MultiPoly:
    """Bidegree-(d, d) part of P(x,l) exp((x,l))."""
    n = ba.N
    total = MultiPoly.zero(2 * n)
    for k in range(d + 1):
        Pk = ba.P.filter_terms(lambda e, k=k: sum(e[:n]) == k)
        if Pk:
            total = total + Pk * pairing_series(n, d - k)
    return total


def expansion_vs_dual(ba: BAFunction, basis, cutoff: int) -> Report:
    """Compare bidegree components of P exp((x,l)) with sum_i q_i(x) q^i(l)."""
    n = ba.N
    rep = Report(f"dual-basis expansion N={n} m={ba.params.m}")
    for d in range(cutoff + 1):
        lhs = bidegree_component(ba, d)
        rhs = MultiPoly.zero(2 * n)
        for q, qd in zip(basis.basis(d), basis.dual(d)):
            rhs = rhs + q.embed(2 * n, x_idx(n)) * qd.embed(2 * n, lam_idx(n))
        rep.add(f"degree {d}", lhs == rhs, {"difference": str(lhs - rhs)})
    return rep


def generating_component(ba: BAFunction, d: int) -> MultiPoly:
    """l-degree-d part of P exp((x,l)) exp(-l^2/2)."""
    n = ba.N
    lam2 = power_sum(n, 2).embed(2 * n, lam_idx(n))
    total = MultiPoly.zero(2 * n)
    for a in range(d + 1):
        Pa = ba.P.filter_terms(lambda e, a=a: sum(e[n:]) == a)
        if not Pa:
            continue
        for b in range((d - a) // 2 + 1):
            c = d - a - 2 * b
            g = (lam2 ** b).scale(mpq((-1) ** b, 2 ** b * factorial(b)))
            total = total + Pa * g * pairing_series(n, c)
    return total


def hermite_from_genfun(ba: BAFunction, q: MultiPoly, form: str = "canonical") -> MultiPoly:
    """H_q = <F(x, .), q> with F = phi exp(-l^2/2).

    form="canonical" uses the pairing (L_p q)(0) (correct for every
    quasi-invariant q); form="dunkl" uses phi(0,0)^{-1} (q(D_l) F)(x, 0),
    which agrees with it only for symmetric q."""
    n = ba.N
    if q.nvars != n:
        raise ValueError("variable count mismatch")
    if form == "canonical":
        return hermite_from_genfun_canonical(ba, q)
    if form != "dunkl":
        raise ValueError(f"unknown form {form!r}")
    if not is_quasi_invariant(q, ba.params.m):
        raise NotQuasiInvariant("input is not quasi-invariant")
    total = MultiPoly.zero(n)
    for d, part in q.homogeneous_parts():
        F = generating_component(ba, d)
        image = dunkl_poly_apply(part, F, ba.params.c, lam_idx(n))
        at_zero = image.filter_terms(lambda e: not any(e[n:]))
        total = total + at_zero.project(x_idx(n))
    return total.scale(1 / ba.phi00)


def ba_1d(m: int, kmax: int) -> MultiPoly:
    """Truncation to l-degree <= kmax of the one-variable BA function
    prod_{s=1..m} (x d/dx - (2s-1)) e^{lx}, as a polynomial in (x, l)."""
    series = MultiPoly(2, {(a, a): mpq(1, factorial(a)) for a in range(kmax + 1)})
    for s in range(1, m + 1):
        x = MultiPoly.var(2, 0)
        series = x * series.diff(0) - series.scale(2 * s - 1)
    return series


# -- canonical form through the Berest intertwiner ---------------------------

def _fischer(p: MultiPoly, g: MultiPoly) -> mpq:
    """(p(d) g)(0) = sum_e p_e g_e e!."""
    total = mpq(0)
    for e, c in p.terms.items():
        v = g.terms.get(e)
        if v:
            f = 1
            for a in e:
                f *= factorial(a)
            total += c * v * f
    return total


class CanonicalForm:
    """The pairing (p, q) = (L_p q)(0) on quasi-invariants.

    Uses the intertwiner T = c sum_k C(M,k) (-1)^(M-k) L^k A^2 Laplacian^(M-k)
    from Berest's formula, which satisfies L_p T = T p(d) and T(1) = phi(0,0):
    if T g = q then (p, q) = phi(0,0) (p(d) g)(0)."""

    def __init__(self, params):
        self.params = _params(params)
        n, m = self.params.N, self.params.m
        self.M = m * n * (n - 1) // 2
        A = arrangement_poly(self.params)
        self._A2 = A * A
        self._L = cm_operator(self.params)
        self._lap = cm_operator(CouplingParams(n, 0))
        self._images = {}
        one = self.T(MultiPoly.one(n))
        if one.degree() > 0:
            raise NonPolynomialResult("intertwiner does not preserve degree")
        self.phi00 = one.constant_term()

    def T(self, g: MultiPoly) -> MultiPoly:
        M = self.M
        total = MultiPoly.zero(g.nvars)
        lap_pows = [g]
        for _ in range(M):
            lap_pows.append(_as_poly(self._lap.apply(lap_pows[-1])))
        for k in range(M + 1):
            f = self._A2 * lap_pows[M - k]
            for _ in range(k):
                f = _as_poly(self._L.apply(f))
            total = total + f.scale(mpq((-1) ** (M - k) * _binom(M, k)))
        return total.scale(mpq(1, 2 ** M * factorial(M)))

    def _degree_images(self, d: int):
        if d not in self._images:
            from .core import monomials_of_degree

            monos = monomials_of_degree(self.params.N, d)
            self._images[d] = (monos, [self.T(MultiPoly.monomial(e)) for e in monos])
        return self._images[d]

    def preimage(self, q: MultiPoly) -> MultiPoly:
        """Some g with T g = q (q homogeneous quasi-invariant)."""
        from .linalg import solve_any

        n = self.params.N
        if not q:
            return q
        d = q.degree()
        if not q.is_homogeneous():
            raise ValueError("preimage expects a homogeneous polynomial")
        monos, images = self._degree_images(d)
        rows_keys = monos
        rows = [[img.terms.get(r, 0) for img in images] for r in rows_keys]
        rhs = [q.terms.get(r, 0) for r in rows_keys]
        sol = solve_any(rows, rhs)
        if sol is None:
            raise NotQuasiInvariant("polynomial is outside the image of the intertwiner")
        return MultiPoly(n, {e: c for e, c in zip(monos, sol) if c})

    def __call__(self, p: MultiPoly, q: MultiPoly) -> mpq:
        """(p, q) for quasi-invariants p, q (graded: different degrees pair to 0)."""
        total = mpq(0)
        p_parts = dict(p.homogeneous_parts())
        for d, qd in q.homogeneous_parts():
            if d in p_parts:
                total += _fischer(p_parts[d], self.preimage(qd))
        return total * self.phi00

    def normalised(self, p: MultiPoly, q: MultiPoly) -> mpq:
        return self(p, q) / self.phi00


def _as_poly(f) -> MultiPoly:
    if isinstance(f, RationalFn):
        if not f.is_poly():
            raise NonPolynomialResult("intertwiner left the polynomial ring")
        return f.to_poly()
    return f


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def hermite_from_genfun_canonical(ba: BAFunction, q: MultiPoly, form: CanonicalForm | None = None) -> MultiPoly:
    """<F(x, .), q> with the canonical pairing: (g(d_l) F)(x, 0) where T g = q."""
    n = ba.N
    if not is_quasi_invariant(q, ba.params.m):
        raise NotQuasiInvariant("input is not quasi-invariant")
    form = form or canonical_form(ba.params)
    total = MultiPoly.zero(n)
    for d, part in q.homogeneous_parts():
        g = form.preimage(part)
        F = generating_component(ba, d)
        acc = MultiPoly.zero(2 * n)
        for e, c in g.terms.items():
            acc = acc + F.diff_multi((0,) * n + tuple(e)).scale(c)
        at_zero = acc.filter_terms(lambda ex: not any(ex[n:]))
        total = total + at_zero.project(x_idx(n))
    return total


_FORMS: dict = {}


def canonical_form(params) -> CanonicalForm:
    """Shared CanonicalForm per (N, c)."""
    p = _params(params)
    key = (p.N, p.c)
    if key not in _FORMS:
        _FORMS[key] = CanonicalForm(p)
    return _FORMS[key]
