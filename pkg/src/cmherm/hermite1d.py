"""One-variable m-Hermite polynomials.

Three constructions are provided and cross-checked: a Wronskian of odd
Hermite polynomials, the Baker-Akhiezer generating function, and the
coefficient recurrence coming from the eigen-equation. Also here: Laguerre
relations, the m = 1 multiplication rules and the LaTeX table emitter.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .core import MultiPoly
from .reports import Report

X = MultiPoly.var(1, 0)
STRATEGIES = ("wronskian", "genfun", "recurrence")


def _x_power(k: int) -> MultiPoly:
    return MultiPoly.monomial((k,))


@lru_cache(maxsize=None)
def classical_hermite(n: int) -> MultiPoly:
    """Monic probabilists' Hermite polynomial via H_{n+1} = x H_n - n H_{n-1}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    prev, cur = MultiPoly.zero(1), MultiPoly.one(1)
    for k in range(n):
        prev, cur = cur, X * cur - prev.scale(k)
    return cur


def c_mn(m: int, n: int) -> int:
    out = 1
    for k in range(1, m + 1):
        out *= n - 2 * k + 1
    return out


def euler_shift(f: MultiPoly, a) -> MultiPoly:
    """(x d/dx - a) f in the first variable."""
    return MultiPoly.var(f.nvars, 0) * f.diff(0) - f.scale(a)


def _det(rows: list) -> MultiPoly:
    """Cofactor expansion along the first row (sizes here are at most 4)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = MultiPoly.zero(rows[0][0].nvars)
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def wronskian(funcs: list) -> MultiPoly:
    rows = [list(funcs)]
    for _ in range(len(funcs) - 1):
        rows.append([f.diff(0) for f in rows[-1]])
    return _det(rows)


def _hermite_wronskian(m: int, n: int) -> MultiPoly:
    funcs = [_x_power(2 * j - 1) for j in range(1, m + 1)] + [classical_hermite(n)]
    W = wronskian(funcs)
    e = m * (m - 1) // 2
    scale = 2 ** e
    for j in range(1, m):
        scale *= factorial(m - j)
    if not W:
        return W
    return W.exact_div(_x_power(e)).scale(mpq(1, scale))


def _hermite_genfun(m: int, n: int) -> MultiPoly:
    # k-Taylor of exp(kx - k^2/2) through k^n, variables (x, k)
    series = MultiPoly.zero(2)
    for a in range(n + 1):
        for b in range((n - a) // 2 + 1):
            series = series + MultiPoly.monomial(
                (a, a + 2 * b), mpq((-1) ** b, factorial(a) * 2 ** b * factorial(b))
            )
    for s in range(1, m + 1):
        series = euler_shift(series, 2 * s - 1)
    coeff = MultiPoly(1, {e[:1]: c for e, c in series.terms.items() if e[1] == n})
    return coeff.scale(factorial(n))


def monic_mhermite(m: int, n: int) -> MultiPoly:
    """Monic p with L_m p = n p, from (n-i)(n-i-1-2m) a_i = -(i+2) a_{i+2}."""
    coeffs = {n: mpq(1)}
    a = mpq(1)
    for i in range(0, n - 1, 2):
        a = -a * (n - i) * (n - i - 1 - 2 * m) / (i + 2)
        if not a:
            break
        coeffs[n - i - 2] = a
    return MultiPoly(1, {(k,): c for k, c in coeffs.items()})


def _hermite_recurrence(m: int, n: int) -> MultiPoly:
    c = c_mn(m, n)
    if c == 0:
        return MultiPoly.zero(1)
    return monic_mhermite(m, n).scale(c)


_BUILDERS = {
    "wronskian": _hermite_wronskian,
    "genfun": _hermite_genfun,
    "recurrence": _hermite_recurrence,
}


@dataclass(frozen=True)
class MHermite1dResult:
    m: int
    n: int
    H: MultiPoly
    c_mn: int
    monic_part: MultiPoly

    def to_json_obj(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "c_mn": str(self.c_mn),
            "H": self.H.to_json_obj(["x"]),
            "monic_part": self.monic_part.to_json_obj(["x"]),
        }


@lru_cache(maxsize=None)
def mhermite(m: int, n: int, strategy: str = "recurrence") -> MHermite1dResult:
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    try:
        build = _BUILDERS[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}") from None
    H = build(m, n)
    c = c_mn(m, n)
    monic = H.scale(mpq(1, c)) if c else MultiPoly.zero(1)
    return MHermite1dResult(m, n, H, c, monic)


def calogero_1d(m: int, f: MultiPoly) -> MultiPoly:
    """-f'' + x f' + (2m/x) f' (the division is exact on Q_m)."""
    d1 = f.diff(0)
    out = -d1.diff(0) + X * d1
    if m and d1:
        out = out + d1.exact_div(X).scale(2 * m)
    return out


def is_quasi_invariant_1d(f: MultiPoly, m: int) -> bool:
    """f(x) - f(-x) divisible by x^(2m+1)."""
    odd = f.filter_terms(lambda e: e[0] % 2)
    return all(e[0] >= 2 * m + 1 for e in odd.terms)


def _reflect(f: MultiPoly) -> MultiPoly:
    return MultiPoly(1, {e: (-c if e[0] % 2 else c) for e, c in f.terms.items()})


def check_mhermite_properties(m: int, n: int) -> Report:
    r = mhermite(m, n)
    rep = Report(f"m-Hermite properties m={m} n={n}")
    H = r.H
    rep.add("parity", _reflect(H) == H.scale((-1) ** n), anchor="H(-x) = (-1)^n H(x)")
    rep.add("quasi-invariant", is_quasi_invariant_1d(H, m), anchor="H lies in Q_m")
    rep.add("eigen-equation", calogero_1d(m, H) == H.scale(n), anchor="L_m H = n H")
    if n % 2 == 1 and n <= 2 * m - 1:
        rep.add("vanishing at odd index", not H, anchor="H_{2s-1} = 0 for s <= m")
    if n % 2 == 1 and H:
        rep.add("odd divisible by x^(2m+1)", min(e[0] for e in H.terms) >= 2 * m + 1)
    if r.c_mn:
        ok = all(c.denominator == 1 for c in r.monic_part.terms.values())
        ok = ok and r.monic_part.degree() == n and r.monic_part.coefficient((n,)) == 1
        rep.add("integral monic part", ok, anchor="p_n monic with integer coefficients")
    return rep


def check_cross_construction(m: int, n: int) -> Report:
    rep = Report(f"three constructions m={m} n={n}")
    results = {s: mhermite(m, n, s).H for s in STRATEGIES}
    ref = results["recurrence"]
    for s in ("wronskian", "genfun"):
        rep.add(f"{s} = recurrence", results[s] == ref, {"got": str(results[s]), "want": str(ref)})
    return rep


# -- Laguerre ---------------------------------------------------------------

@lru_cache(maxsize=None)
def laguerre(n: int, alpha) -> MultiPoly:
    """Generalised Laguerre polynomial L_n^(alpha)(z) by the three-term recurrence."""
    alpha = mpq(alpha)
    z = X
    prev = MultiPoly.one(1)
    if n == 0:
        return prev
    cur = MultiPoly.const(1, alpha + 1) - z
    for k in range(1, n):
        nxt = (MultiPoly.const(1, 2 * k + 1 + alpha) - z) * cur - prev.scale(k + alpha)
        prev, cur = cur, nxt.scale(mpq(1, k + 1))
    return cur


def laguerre_ode_residual(f: MultiPoly, n: int, alpha) -> MultiPoly:
    """z f'' + (alpha + 1 - z) f' + n f."""
    d1 = f.diff(0)
    return X * d1.diff(0) + (MultiPoly.const(1, mpq(alpha) + 1) - X) * d1 + f.scale(n)


def _in_square(f: MultiPoly) -> MultiPoly:
    """f(y) -> f(x^2)."""
    return MultiPoly(1, {(2 * e[0],): c for e, c in f.terms.items()})


def _half_square(f: MultiPoly) -> MultiPoly:
    """f(z) -> f(x^2/2)."""
    return MultiPoly(1, {(2 * e[0],): c / 2 ** e[0] for e, c in f.terms.items()})


def _from_square(f: MultiPoly) -> MultiPoly:
    """Inverse of _in_square for even f."""
    if any(e[0] % 2 for e in f.terms):
        raise ValueError("polynomial is not even")
    return MultiPoly(1, {(e[0] // 2,): c for e, c in f.terms.items()})


def even_part_poly(m: int, n: int) -> MultiPoly:
    """Monic E_n with c_{m,2n} E_n(x^2) = H_{2n}."""
    r = mhermite(m, 2 * n)
    return _from_square(r.monic_part)


def odd_part_poly(m: int, n: int) -> MultiPoly:
    """Monic G_n with c x^(2m+1) G_n(x^2) = H_{2n+2m+1}."""
    r = mhermite(m, 2 * n + 2 * m + 1)
    return _from_square(r.monic_part.exact_div(_x_power(2 * m + 1)))


def check_laguerre_relation(m: int, n: int, branch: str) -> Report:
    """E_n(x^2) (or G_n(x^2)) against L_n^(alpha)(x^2/2).

    Records the proportionality constant; the ODE checks do not depend on it."""
    if branch not in ("even", "odd"):
        raise ValueError("branch must be 'even' or 'odd'")
    alpha = mpq(-2 * m - 1, 2) if branch == "even" else mpq(2 * m + 1, 2)
    poly = even_part_poly(m, n) if branch == "even" else odd_part_poly(m, n)
    lag = laguerre(n, alpha)
    lhs = _in_square(poly)
    rhs = _half_square(lag)
    const = lhs.coefficient((2 * n,)) / rhs.coefficient((2 * n,))
    rep = Report(f"Laguerre relation m={m} n={n} {branch}")
    rep.add("Laguerre ODE", not laguerre_ode_residual(lag, n, alpha), anchor="z L'' + (alpha+1-z) L' + n L = 0")
    rep.add("proportional", lhs == rhs.scale(const), {"constant": str(const)})
    if branch == "even":
        f = lhs
        res = f.diff(0).diff(0) - X * f.diff(0) + f.scale(2 * n)
        d1 = f.diff(0)
        if d1:
            res = res + d1.exact_div(X).scale(2 * alpha + 1)
        rep.add("ODE in x", not res, anchor="Laguerre ODE after z = x^2/2")
    else:
        f = _x_power(2 * m + 1) * lhs
        rep.add("ODE in x", calogero_1d(m, f) == f.scale(2 * n + 2 * m + 1), anchor="L_m eigen-equation")
    rep.constant = const
    return rep


def expected_laguerre_constant(n: int) -> int:
    return (-2) ** n * factorial(n)


# -- m = 1 multiplication rules --------------------------------------------

def _H1(k: int) -> MultiPoly:
    return mhermite(1, k).H if k >= 0 else MultiPoly.zero(1)


def check_m1_product_rules(k: int) -> Report:
    rep = Report(f"m=1 product rules k={k}")
    lhs2 = X ** 2 * _H1(k)
    rhs2 = _H1(k + 2).scale(mpq(k - 1, k + 1)) + _H1(k).scale(2 * k - 1) + _H1(k - 2).scale(k * (k - 1))
    rep.add("x^2 rule", lhs2 == rhs2, {"difference": str(lhs2 - rhs2)})
    lhs3 = X ** 3 * _H1(k)
    rhs3 = (
        _H1(k + 3).scale(mpq(k - 1, k + 2))
        + _H1(k + 1).scale(3 * (k - 1))
        + _H1(k - 1).scale(3 * k * (k - 1))
        + _H1(k - 3).scale(k * (k - 1) * (k - 2))
    )
    rep.add("x^3 rule", lhs3 == rhs3, {"difference": str(lhs3 - rhs3)})
    return rep


# -- LaTeX --------------------------------------------------------------------

def _latex_poly(f: MultiPoly) -> str:
    out = []
    for e, c in f.sorted_terms():
        k = e[0]
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{{{k}}}" if k > 9 else f"x^{k}")
        mag = abs(c)
        coef = "" if (mag == 1 and mono) else (str(mag) if mag.denominator == 1 else f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}")
        sign = "-" if c < 0 else "+"
        out.append((sign, coef + mono))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def latex_factored(f: MultiPoly, content=None) -> str:
    """content * x^v * (monic rest), written the way the tables are printed."""
    if not f:
        return "0"
    lead = f.coefficient((f.degree(),))
    content = lead if content is None else mpq(content)
    v = min(e[0] for e in f.terms)
    rest = MultiPoly(1, {(e[0] - v,): c / content for e, c in f.terms.items()})
    prefix = "" if content == 1 else ("-" if content == -1 else str(content))
    power = "" if v == 0 else ("x" if v == 1 else f"x^{v}")
    if rest == 1:
        if not power:
            return str(content)
        return prefix + power
    body = _latex_poly(rest)
    if not prefix and not power:
        return body
    return f"{prefix}{power}({body})" if len(rest.terms) > 1 else f"{prefix}{power}{body}"


def latex_table(m: int, n_max: int) -> str:
    lines = []
    for n in range(n_max + 1):
        r = mhermite(m, n)
        body = latex_factored(r.H, r.c_mn if r.c_mn else None)
        lines.append(f"H_{{{n}}}^{{({m})}} = {body}")
    return ",\n".join(lines)


__all__ = [
    "MHermite1dResult",
    "STRATEGIES",
    "c_mn",
    "calogero_1d",
    "check_cross_construction",
    "check_laguerre_relation",
    "check_m1_product_rules",
    "check_mhermite_properties",
    "classical_hermite",
    "even_part_poly",
    "expected_laguerre_constant",
    "laguerre",
    "laguerre_ode_residual",
    "latex_factored",
    "latex_table",
    "mhermite",
    "monic_mhermite",
    "odd_part_poly",
    "wronskian",
]
