"""Quasi-invariant polynomials: membership test, graded bases, Gram matrices
and dual bases.

Two pairings are available. "canonical" is (p, q) = (L_p q)(0), realised
through Berest's intertwiner; "dunkl" is (p(D) q)(0). They coincide when one
argument is symmetric but differ on the antisymmetric sectors, and only the
canonical one makes the Baker-Akhiezer expansion close."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from gmpy2 import mpq

from .cherednik import CouplingParams, _params, djo_form
from .core import MultiPoly, monomials_of_degree, root_pairs
from .errors import DegenerateNormalization, NotDivisible, SingularGram
from .linalg import SingularMatrix, inverse, nullspace


def is_quasi_invariant(p: MultiPoly, m: int) -> bool:
    """True iff p - s_ij p is divisible by (x_i - x_j)^(2m+1) for all i < j."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    for i, j in root_pairs(p.nvars):
        diff = p - p.swap(i, j)
        if not diff:
            continue
        try:
            diff.divide_by_root(i, j, 2 * m + 1)
        except NotDivisible:
            return False
    return True


def _constraint_rows(n: int, m: int, monos: list) -> list:
    """Linear conditions on coefficients of sum a_e x^e for quasi-invariance.

    Along each pair (i, j) substitute x_i = x_j + t; the coefficients of
    t^0..t^(2m) in p - s_ij p must vanish."""
    rows = {}
    for col, e in enumerate(monos):
        for i, j in root_pairs(n):
            for sign, ex in ((1, e), (-1, _swapped(e, i, j))):
                a = ex[i]
                for k in range(min(a, 2 * m) + 1):
                    rest = list(ex)
                    rest[j] += a - k
                    rest[i] = 0
                    key = (i, j, k, tuple(rest))
                    row = rows.setdefault(key, {})
                    row[col] = row.get(col, 0) + sign * comb(a, k)
    out = []
    for key in sorted(rows):
        row = rows[key]
        if any(row.values()):
            out.append([row.get(c, 0) for c in range(len(monos))])
    return out


def _swapped(e, i, j):
    e = list(e)
    e[i], e[j] = e[j], e[i]
    return tuple(e)


def qbasis(params, d: int) -> list:
    """A basis of the degree-d quasi-invariants, in deterministic order."""
    p = _params(params)
    m = p.m
    n = p.N
    monos = monomials_of_degree(n, d)
    if m == 0:
        return [MultiPoly.monomial(e) for e in monos]
    rows = _constraint_rows(n, m, monos)
    basis = []
    for vec in nullspace(rows, len(monos)):
        basis.append(MultiPoly(n, {e: c for e, c in zip(monos, vec) if c}))
    return basis


def arrangement_poly(params) -> MultiPoly:
    """prod_{i<j} (x_i - x_j)^m."""
    p = _params(params)
    out = MultiPoly.one(p.N)
    for i, j in root_pairs(p.N):
        out = out * MultiPoly.root(p.N, i, j) ** p.m
    return out


def _pairing(params, form: str):
    p = _params(params)
    if form == "dunkl":
        return lambda a, b: djo_form(a, b, p)
    if form == "canonical":
        from .bafn import canonical_form

        return canonical_form(p)
    raise ValueError(f"unknown form {form!r}")


def gram_matrix(basis: list, params, form: str = "canonical") -> list:
    pair = _pairing(params, form)
    return [[pair(a, b) for b in basis] for a in basis]


def dual_basis(basis: list, params, phi00, form: str = "canonical") -> list:
    """q^j with [q_i, q^j] = phi00 * delta_ij."""
    phi00 = mpq(phi00)
    if not phi00:
        raise DegenerateNormalization("phi(0,0) = 0")
    if not basis:
        return []
    G = gram_matrix(basis, params, form)
    try:
        Ginv = inverse(G)
    except SingularMatrix as exc:
        raise SingularGram(str(exc)) from None
    n = basis[0].nvars
    out = []
    for j in range(len(basis)):
        acc = MultiPoly.zero(n)
        for k, q in enumerate(basis):
            if Ginv[k][j]:
                acc = acc + q.scale(Ginv[k][j])
        out.append(acc.scale(phi00))
    return out


@dataclass
class DegreeData:
    basis: list
    gram: list
    dual: list


@dataclass
class GradedBasis:
    """Quasi-invariant bases with Gram and dual bases, degree by degree."""

    params: CouplingParams
    phi00: mpq
    form: str = "canonical"
    degrees: dict = field(default_factory=dict)
    cache_root: str | None = None

    @classmethod
    def build(
        cls, params, dmax: int, phi00=None, form: str = "canonical", cache_root: str | None = None
    ) -> "GradedBasis":
        """Bases up to degree dmax; with ``cache_root`` set, degrees are read
        from and written to the on-disk cache."""
        p = _params(params)
        if phi00 is None and cache_root is not None:
            from . import cache

            hit = cache.load(p.N, p.m, 0, form, cache_root)
            if hit is not None:
                phi00 = hit[0]
        if phi00 is None:
            from .bafn import berest_ba

            phi00 = berest_ba(p).phi00
        gb = cls(p, mpq(phi00), form, cache_root=cache_root)
        for d in range(dmax + 1):
            gb.ensure(d)
        return gb

    def ensure(self, d: int) -> DegreeData:
        if d not in self.degrees and self.cache_root is not None:
            from . import cache

            hit = cache.load(self.params.N, self.params.m, d, self.form, self.cache_root)
            if hit is not None and hit[0] == self.phi00:
                self.degrees[d] = hit[1]
        if d not in self.degrees:
            basis = qbasis(self.params, d)
            G = gram_matrix(basis, self.params, self.form)
            dual = dual_basis(basis, self.params, self.phi00, self.form)
            self.degrees[d] = DegreeData(basis, G, dual)
            if self.cache_root is not None:
                from . import cache

                cache.store(self.params.N, self.params.m, d, self.phi00, self.degrees[d], self.form, self.cache_root)
        return self.degrees[d]

    def basis(self, d: int) -> list:
        return self.ensure(d).basis

    def dual(self, d: int) -> list:
        return self.ensure(d).dual

    def gram(self, d: int) -> list:
        return self.ensure(d).gram

    def pairing(self, p: MultiPoly, q: MultiPoly) -> mpq:
        """The normalised pairing <p, q> = (p, q) / phi00."""
        return _pairing(self.params, self.form)(p, q) / self.phi00
