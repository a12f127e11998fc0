"""Verification suites behind ``cmherm verify``.

Each suite returns a Report whose checks carry a short statement of the
identity being tested. ``run_suite("all")`` covers every acceptance
criterion."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from gmpy2 import mpq

from .bafn import (
    berest_ba,
    check_axioms,
    check_Lq_eigen,
    check_trig_symmetry,
    expansion_vs_dual,
)
from .cherednik import (
    CouplingParams,
    build_harmonic_integral,
    build_trig_integral,
    cm_operator,
    conjugate_apply,
    dunkl,
    euler_operator,
    polychronakos,
    skew_power_sum,
    trig_cm_operator,
)
from .core import MultiPoly, power_sum
from .deformed import DeformedParams, apply_deformed, deformed_newton, verify_deformed_correspondence
from .errors import PoleAtAlpha
from .hermite1d import (
    check_cross_construction,
    check_laguerre_relation,
    check_m1_product_rules,
    check_mhermite_properties,
    classical_hermite,
    expected_laguerre_constant,
    mhermite,
)
from .hermitemulti import (
    check_eigen,
    hermitise,
    jack_coefficients,
    jordan_block_demo,
    product_hermite,
    verify_intertwine,
)
from .higher import (
    GammaData,
    build_Kgamma,
    check_bispectral_recurrences,
    gould_hopper,
    p_gamma,
    pkl_series,
)
from .operalg import collapse, commutator
from .quasinv import GradedBasis, qbasis
from .reports import Report
from .symmetric import partitions

# m = 1 Hermite table, each entry as (content, power of x, monic rest by
# descending even powers)
HERMITE_M1_TABLE = {
    0: (-1, 0, [1]),
    1: (0, 0, [0]),
    2: (1, 0, [1, 1]),
    3: (2, 3, [1]),
    4: (3, 0, [1, -2, -1]),
    5: (4, 3, [1, -5]),
    6: (5, 0, [1, -9, 9, 3]),
    7: (6, 3, [1, -14, 35]),
    8: (7, 0, [1, -20, 90, -60, -15]),
    9: (8, 3, [1, -27, 189, -315]),
    10: (9, 0, [1, -35, 350, -1050, 525, 105]),
}

CLASSICAL_TABLE = {
    0: [1],
    1: [1],
    2: [1, -1],
    3: [1, -3],
    4: [1, -6, 3],
    5: [1, -10, 15],
}


def table_poly(content: int, power: int, monic: list) -> MultiPoly:
    top = 2 * (len(monic) - 1)
    terms = {(power + top - 2 * i,): mpq(c * content) for i, c in enumerate(monic) if c * content}
    return MultiPoly(1, terms)


@dataclass
class SuiteOptions:
    profile: str = "desk"
    n: int | None = None
    m: object = None
    deg: int | None = None
    l_max: int | None = None

    @property
    def extended(self) -> bool:
        return self.profile == "extended"

    def instances(self, default):
        out = list(default)
        if self.n is not None:
            out = [(N, m) for N, m in out if N == self.n] or [(self.n, m) for _, m in out[:1]]
        if self.m is not None:
            out = [(N, m) for N, m in out if m == self.m] or [(N, self.m) for N, _ in out[:1]]
        return list(dict.fromkeys(out))

    def degree(self, default: int) -> int:
        return default if self.deg is None else self.deg


# -- suites -----------------------------------------------------------------------

def suite_hermite1d_golden(opt: SuiteOptions) -> Report:
    rep = Report("m-Hermite table, m = 1")
    for n, (c, v, monic) in HERMITE_M1_TABLE.items():
        want = table_poly(c, v, monic)
        got = mhermite(1, n).H
        rep.add(f"H_{n}^(1)", got == want, {"got": str(got), "want": str(want)}, "tabulated m = 1 values")
    return rep


def suite_hermite1d_crosscheck(opt: SuiteOptions) -> Report:
    rep = Report("m-Hermite constructions")
    mmax = 3 if opt.m is None else int(opt.m)
    nmax = opt.degree(12)
    for n, monic in CLASSICAL_TABLE.items():
        want = table_poly(1, n % 2, monic)
        rep.add(f"classical H_{n}", classical_hermite(n) == want, {"got": str(classical_hermite(n))}, "probabilists' Hermite list")
    for m in range(mmax + 1):
        for n in range(nmax + 1):
            rep.extend(check_cross_construction(m, n), f"m={m} n={n}: ")
    for k in range(2, 11):
        rep.extend(check_m1_product_rules(k), f"k={k}: ")
    return rep


def suite_integrality(opt: SuiteOptions) -> Report:
    rep = Report("m-Hermite properties")
    mmax = 3 if opt.m is None else int(opt.m)
    for m in range(mmax + 1):
        for n in range(opt.degree(20) + 1):
            rep.extend(check_mhermite_properties(m, n), f"m={m} n={n}: ")
    return rep


def suite_laguerre(opt: SuiteOptions) -> Report:
    rep = Report("Laguerre relations")
    mmax = 3 if opt.m is None else int(opt.m)
    for m in range(mmax + 1):
        for n in range(opt.degree(8) + 1):
            for branch in ("even", "odd"):
                r = check_laguerre_relation(m, n, branch)
                rep.extend(r, f"m={m} n={n} {branch}: ")
                rep.add(
                    f"m={m} n={n} {branch}: constant (-2)^n n!",
                    r.constant == expected_laguerre_constant(n),
                    {"measured": str(r.constant)},
                    "measured proportionality constant",
                )
    return rep


def suite_ba_axioms(opt: SuiteOptions) -> Report:
    rep = Report("Baker-Akhiezer function")
    for N, m in opt.instances([(2, 1), (2, 2), (3, 1)]):
        params = CouplingParams(N, m)
        ba = berest_ba(params)
        pre = f"N={N} m={m}: "
        rep.extend(check_axioms(ba), pre)
        for k in (1, 2, 3):
            rep.add(pre + f"L_p phi = p(l) phi for p_{k}", check_Lq_eigen(ba, power_sum(N, k)), anchor="eigenfunction of the rational integrals")
        for k in (1, 2):
            rep.add(pre + f"trigonometric integral p_{k} acts equally in x and l", check_trig_symmetry(ba, power_sum(N, k)))
    return rep


def suite_collapse(opt: SuiteOptions) -> Report:
    rep = Report("collapse identities")
    for N in ((2, 3) if opt.n is None else (opt.n,)):
        for c in ((1, 2, mpq(1, 2)) if opt.m is None else (mpq(opt.m),)):
            params = CouplingParams(N, c)
            pis = [polychronakos(i, params) for i in range(N)]
            ds = [dunkl(i, params) for i in range(N)]
            pre = f"N={N} c={c}: "
            rep.add(pre + "collapse(sum pi_i) = E", collapse(skew_power_sum(pis, 1)) == euler_operator(N))
            rep.add(pre + "collapse(sum pi_i^2) = trigonometric CM operator", collapse(skew_power_sum(pis, 2)) == trig_cm_operator(params))
            rep.add(pre + "collapse(sum D_i^2) = L", collapse(skew_power_sum(ds, 2)) == cm_operator(params))
    return rep


def suite_bch(opt: SuiteOptions) -> Report:
    rep = Report("harmonic integrals by commutator series")
    for N, m in opt.instances([(2, 1), (3, 1), (2, 2)]):
        params = CouplingParams(N, m)
        L = cm_operator(params)
        E = euler_operator(N)
        rep.add(f"N={N} m={m}: harmonic p_1 = E - L", build_harmonic_integral(power_sum(N, 1), params) == E - L)
    params = CouplingParams(2, 1)
    L = cm_operator(params)
    p2 = power_sum(2, 2)
    H2 = build_harmonic_integral(p2, params)
    T2 = build_trig_integral(p2, params)
    for d in range(opt.degree(6) + 1):
        for q in qbasis(params, d):
            lhs = H2.apply(q)
            rhs = conjugate_apply(T2, L, q)
            rep.add(f"p_2 series vs exp(-L/2) L_p exp(L/2) on {q}", lhs == rhs)
    return rep


def suite_intertwine(opt: SuiteOptions) -> Report:
    rep = Report("intertwining of trigonometric and harmonic integrals")
    for N, m in opt.instances([(2, 1), (3, 1)] + ([(2, 2)] if opt.extended else [])):
        params = CouplingParams(N, m)
        for d in range(opt.degree(6) + 1):
            for q in qbasis(params, d):
                for k in (1, 2, 3):
                    rep.add(
                        f"N={N} m={m} p_{k} q={q}",
                        verify_intertwine(power_sum(N, k), q, params),
                        anchor="L_p^H(H_q) = H_(L_p q)",
                    )
    return rep


def suite_commute(opt: SuiteOptions) -> Report:
    rep = Report("commuting harmonic integrals")
    couplings = [1, 2, mpq(1, 2)] if opt.m is None else [mpq(opt.m)]
    for c in couplings:
        params = CouplingParams(2 if opt.n is None else opt.n, c)
        ops = {k: build_harmonic_integral(power_sum(params.N, k), params) for k in (1, 2, 3)}
        for i in (1, 2, 3):
            for j in range(i + 1, 4):
                rep.add(f"c={c}: [H_{i}, H_{j}] = 0", not commutator(ops[i], ops[j]))
    return rep


GAMMAS = [
    GammaData(1, [0, -1]),
    GammaData.monomial(2, mpq(2, 3)),
    GammaData(3, [0, -1, 0, mpq(2, 3)]),
]


def suite_eigen(opt: SuiteOptions) -> Report:
    rep = Report("eigen-equations")
    for N, m in opt.instances([(2, 1), (3, 1)]):
        params = CouplingParams(N, m)
        for d in range(opt.degree(8) + 1):
            for q in qbasis(params, d):
                rep.add(f"N={N} m={m}: (L - E) H_q = -deg(q) H_q, q={q}", check_eigen(q, params))
        for g in GAMMAS:
            for d in range(min(opt.degree(8), 6) + 1):
                for q in qbasis(params, d):
                    try:
                        p_gamma(q, g, params)
                        ok = True
                    except Exception:  # EigenCheckFailed or a non-polynomial image
                        ok = False
                    rep.add(f"N={N} m={m}: K P_q = deg(q) P_q for P(z)={g}, q={q}", ok)
    return rep


def suite_jack(opt: SuiteOptions) -> Report:
    rep = Report("Jack polynomials at alpha = -1/m")
    for m in (2, 3):
        got = jack_coefficients((3, 1), mpq(-1, m), 4)
        want = {
            (3, 1): mpq(1),
            (2, 2): mpq(2 * m, m - 1),
            (2, 1, 1): mpq(m * (5 * m - 3), (m - 1) ** 2),
            (1, 1, 1, 1): mpq(12 * m * m, (m - 1) ** 2),
        }
        rep.add(f"P_(3,1) at m={m}", got == want, {"got": {str(k): str(v) for k, v in got.items()}})
        got2 = jack_coefficients((2,), mpq(-1, m), 2)
        rep.add(f"P_(2) at m={m}", got2 == {(2,): 1, (1, 1): mpq(2 * m, m - 1)})
    try:
        jack_coefficients((3, 1), -1, 4)
        pole = False
    except PoleAtAlpha:
        pole = True
    rep.add("P_(3,1) has a pole at m = 1", pole)
    return rep


def suite_jordan(opt: SuiteOptions) -> Report:
    rep = Report("Jordan block of the trigonometric operator")
    for l in range(1, (opt.l_max or 4) + 1):
        rep.extend(jordan_block_demo(l), f"l={l}: ")
    return rep


def suite_expansion(opt: SuiteOptions) -> Report:
    rep = Report("dual-basis expansion of the BA function")
    default = [(2, 1)] + ([(2, 2), (3, 1)] if opt.extended else [])
    for N, m in opt.instances(default):
        params = CouplingParams(N, m)
        ba = berest_ba(params)
        D = opt.degree(6)
        gb = GradedBasis.build(params, D, ba.phi00)
        rep.extend(expansion_vs_dual(ba, gb, D), f"N={N} m={m} canonical form: ")
    return rep


def dunkl_expansion_failures(N: int = 2, m: int = 1, D: int = 6) -> list:
    """Degrees at which the Dunkl-pairing dual basis does not reproduce the
    expansion (kept for the record: the pairing differs on non-symmetric
    arguments)."""
    params = CouplingParams(N, m)
    ba = berest_ba(params)
    gb = GradedBasis.build(params, D, ba.phi00, form="dunkl")
    return [c.name for c in expansion_vs_dual(ba, gb, D).failures()]


def suite_gould_hopper(opt: SuiteOptions) -> Report:
    rep = Report("Gould-Hopper polynomials and bispectral recurrences")
    kmax = opt.degree(10)
    for m in (0, 1, 2):
        for l in (1, 2, 3):
            for tau in (mpq(-1), mpq(2, 3)):
                rep.extend(check_bispectral_recurrences(m, l, tau, kmax), f"m={m} l={l} tau={tau}: ")
    ps = pkl_series(1, 1, -1, kmax)
    for k in range(kmax + 1):
        rep.add(f"k! p_{k} = H_{k}^(1)", ps[k].scale(factorial(k)) == mhermite(1, k).H)
    rep.add("Gould-Hopper l=1 tau=-1 n=4 is H_4", gould_hopper(4, 1, -1) == classical_hermite(4))
    one = CouplingParams(1, 0)
    for l in (1, 2, 3):
        g = GammaData.monomial(l, mpq(2, 3))
        for n in range(9):
            q = MultiPoly.monomial((n,))
            rep.add(f"Gould-Hopper l={l} n={n} from the exponential", p_gamma(q, g, one) == gould_hopper(n, l, mpq(2, 3)))
    rep.add("K at P=-z is E - L", build_Kgamma(GAMMAS[0], CouplingParams(2, 1)) == euler_operator(2) - cm_operator(CouplingParams(2, 1)))
    return rep


def suite_deformed(opt: SuiteOptions) -> Report:
    rep = Report("deformed operators")
    for k in (2, 3, mpq(1, 2)):
        dp = DeformedParams(1, 1, k)
        rep.add(f"k={k}: L(p_2) = 0", not apply_deformed("rationalL", deformed_newton(2, dp), dp))
    D = opt.degree(6)
    for k in (2, 3):
        rep.extend(verify_deformed_correspondence(DeformedParams(1, 1, k), D), f"N1=N2=1 k={k}: ")
    if opt.extended:
        rep.extend(verify_deformed_correspondence(DeformedParams(2, 1, 2), 4), "N1=2 N2=1 k=2: ")
    return rep


def suite_m0(opt: SuiteOptions) -> Report:
    rep = Report("m = 0 Hermitisation")
    for N in (1, 2, 3):
        params = CouplingParams(N, 0)
        for d in range(opt.degree(6) + 1):
            from .core import monomials_of_degree

            for e in monomials_of_degree(N, d):
                rep.add(f"N={N} mu={list(e)}", hermitise(MultiPoly.monomial(e), params) == product_hermite(e))
    return rep


SUITES = {
    "hermite1d-golden": suite_hermite1d_golden,
    "hermite1d-crosscheck": suite_hermite1d_crosscheck,
    "integrality": suite_integrality,
    "laguerre": suite_laguerre,
    "ba-axioms": suite_ba_axioms,
    "collapse": suite_collapse,
    "bch": suite_bch,
    "intertwine": suite_intertwine,
    "commute": suite_commute,
    "eigen": suite_eigen,
    "jack": suite_jack,
    "jordan": suite_jordan,
    "expansion": suite_expansion,
    "gould-hopper": suite_gould_hopper,
    "deformed": suite_deformed,
    "m0": suite_m0,
}

# acceptance criterion number -> suite
CRITERIA = {
    1: "hermite1d-golden",
    2: "hermite1d-crosscheck",
    3: "integrality",
    4: "laguerre",
    5: "ba-axioms",
    6: "collapse",
    7: "bch",
    8: "intertwine",
    9: "commute",
    10: "eigen",
    11: "jack",
    12: "jordan",
    13: "expansion",
    14: "gould-hopper",
    15: "deformed",
    16: "m0",
}


def run_suite(name: str, opt: SuiteOptions | None = None) -> Report:
    opt = opt or SuiteOptions()
    if name == "all":
        rep = Report("all")
        for key in SUITES:
            rep.extend(SUITES[key](opt), f"[{key}] ")
        return rep
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return fn(opt)


def suite_names() -> list:
    return list(SUITES) + ["all"]


__all__ = [
    "CRITERIA",
    "HERMITE_M1_TABLE",
    "SUITES",
    "SuiteOptions",
    "dunkl_expansion_failures",
    "run_suite",
    "suite_names",
    "table_poly",
]
