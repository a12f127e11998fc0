"""Exact rational linear algebra, delegated to sympy's DomainMatrix over QQ."""
from __future__ import annotations

from gmpy2 import mpq
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError


class SingularMatrix(ValueError):
    pass


def _dm(rows, ncols=None) -> DomainMatrix:
    rows = [[QQ(mpq(v)) for v in r] for r in rows]
    ncols = len(rows[0]) if rows else (ncols or 0)
    return DomainMatrix(rows, (len(rows), ncols), QQ)


def nullspace(rows, ncols: int) -> list:
    """Basis of {v : A v = 0}, one vector per free column in column order."""
    if not rows:
        return [[mpq(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    rref, pivots = _dm(rows, ncols).rref()
    dense = rref.to_list()
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for r, pc in enumerate(pivots):
            v[pc] = -mpq(dense[r][f])
        basis.append(v)
    return basis


def inverse(rows) -> list:
    """Exact inverse; raises SingularMatrix when the matrix is not invertible."""
    try:
        inv = _dm(rows).inv()
    except DMNonInvertibleMatrixError as exc:
        raise SingularMatrix(str(exc)) from None
    return [[mpq(v) for v in r] for r in inv.to_list()]


def det(rows) -> mpq:
    if not rows:
        return mpq(1)
    return mpq(_dm(rows).det())


def solve_any(rows, rhs) -> list | None:
    """One solution of A v = b (free variables set to zero), or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rref, pivots = _dm(aug, ncols + 1).rref()
    if ncols in pivots:
        return None
    dense = rref.to_list()
    v = [mpq(0)] * ncols
    for r, pc in enumerate(pivots):
        v[pc] = mpq(dense[r][ncols])
    return v


def rank(rows) -> int:
    if not rows:
        return 0
    return _dm(rows).rank()
