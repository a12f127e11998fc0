"""Partitions, monomial symmetric polynomials and power-sum decompositions."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from gmpy2 import mpq

from .core import MultiPoly, power_sum
from .errors import NotSymmetric
from .linalg import solve_any


def partitions(d: int, max_len: int | None = None, max_part: int | None = None) -> list:
    """Partitions of d in reverse lexicographic order, e.g. (3), (2,1), (1,1,1)."""
    max_part = d if max_part is None else max_part
    if d == 0:
        return [()]
    if max_len == 0:
        return []
    out = []
    for first in range(min(d, max_part), 0, -1):
        rest_len = None if max_len is None else max_len - 1
        for rest in partitions(d - first, rest_len, first):
            out.append((first,) + rest)
    return out


def dominates(lam, mu) -> bool:
    """lam >= mu in dominance order (same size assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


@lru_cache(maxsize=2048)
def monomial_symmetric(lam: tuple, n: int) -> MultiPoly:
    """m_lam in n variables (zero when lam has more than n parts)."""
    lam = tuple(p for p in lam if p)
    if len(lam) > n:
        return MultiPoly.zero(n)
    padded = lam + (0,) * (n - len(lam))
    exps = set(permutations(padded))
    return MultiPoly(n, {e: mpq(1) for e in exps})


def partition_of(e) -> tuple:
    return tuple(sorted((a for a in e if a), reverse=True))


def to_monomial_basis(p: MultiPoly) -> dict:
    """Coefficients of a symmetric p in the m_lam basis."""
    if not p.is_symmetric():
        raise NotSymmetric("polynomial is not symmetric")
    out = {}
    for e, c in p.terms.items():
        if list(e) == sorted(e, reverse=True):
            out[partition_of(e)] = c
    return out


@lru_cache(maxsize=1024)
def power_product(mu: tuple, n: int) -> MultiPoly:
    out = MultiPoly.one(n)
    for r in mu:
        out = out * power_sum(n, r)
    return out


def power_sum_decomposition(p: MultiPoly) -> dict:
    """Write a symmetric p as sum c_mu p_mu with parts of mu at most nvars.

    Returns {mu: c}; the empty partition carries the constant term."""
    n = p.nvars
    if not p.is_symmetric():
        raise NotSymmetric("polynomial is not symmetric")
    out = {}
    for d, part in p.homogeneous_parts():
        if d == 0:
            out[()] = part.constant_term()
            continue
        mus = partitions(d, max_part=n)
        targets = partitions(d, max_len=n)
        cols = [to_monomial_basis(power_product(mu, n)) for mu in mus]
        rhs = to_monomial_basis(part)
        rows = [[col.get(t, 0) for col in cols] for t in targets]
        sol = solve_any(rows, [rhs.get(t, 0) for t in targets])
        if sol is None:
            raise NotSymmetric("no power-sum expansion found")
        for mu, c in zip(mus, sol):
            if c:
                out[mu] = c
    return out
