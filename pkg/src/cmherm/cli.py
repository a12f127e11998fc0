"""Command-line interface: ``cmherm compute``, ``cmherm verify`` and ``cmherm cache``.

Exit codes: 0 on success or a passing suite, 1 when a suite has a failing
check, 2 on usage errors."""
from __future__ import annotations

import argparse
import sys

from gmpy2 import mpq

from . import cache
from .bafn import ba_names, berest_ba
from .cherednik import CouplingParams
from .core import default_names
from .deformed import DeformedParams, deformed_newton
from .errors import CMHermError, PoleAtAlpha
from .hermite1d import latex_table, mhermite
from .hermitemulti import hermitise, jack
from .higher import gould_hopper
from .io import atomic_write, dumps, table_to_csv, table_to_json, table_to_latex
from .quasinv import GradedBasis, qbasis
from .suites import SuiteOptions, run_suite, suite_names
from .symmetric import partitions

FAMILIES = ("hermite1d", "hermite-multi", "jack", "gould-hopper", "qbasis", "ba", "deformed-newton")
CACHE_PROFILES = {
    "desk": ([(2, 1), (2, 2), (3, 1), (3, 2)], 8),
    "extended": ([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)], 8),
}


class UsageError(Exception):
    pass


def rational(text: str) -> mpq:
    try:
        return mpq(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an integer or p/q rational: {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _render(rows: list, fmt: str, extra=None, latex: str | None = None) -> str:
    if fmt == "csv":
        return table_to_csv(rows)
    if fmt == "latex":
        return latex if latex is not None else table_to_latex(rows)
    return table_to_json(rows, extra)


def _int_m(args) -> int:
    m = args.m if args.m is not None else mpq(1)
    if m.denominator != 1 or m < 0:
        raise UsageError(f"--m must be a nonnegative integer here, got {m}")
    return int(m)


# -- compute ---------------------------------------------------------------------

def _compute_rows(args):
    fam = args.family
    if fam == "hermite1d":
        m = _int_m(args)
        nmax = args.n_max if args.n_max is not None else (args.deg if args.deg is not None else 10)
        rows = [(f"H_{n}^({m})", mhermite(m, n).H, ["x"]) for n in range(nmax + 1)]
        extra = [{"m": m, "n": n, "c_mn": mhermite(m, n).c_mn} for n in range(nmax + 1)]
        return rows, extra, latex_table(m, nmax) + "\n"
    N = args.n if args.n is not None else 2
    names = default_names(N)
    if fam == "hermite-multi":
        m = _int_m(args)
        params = CouplingParams(N, m)
        rows, extra = [], []
        for d in range((args.deg if args.deg is not None else 4) + 1):
            for i, q in enumerate(qbasis(params, d)):
                rows.append((f"H[q_{d},{i}]", hermitise(q, params), names))
                extra.append({"degree": d, "q": q.to_json_obj(names)})
        return rows, extra, None
    if fam == "jack":
        c = args.m if args.m is not None else mpq(1)
        alpha = None if c == 0 else -1 / c
        d = args.deg if args.deg is not None else 4
        rows, extra = [], []
        for lam in partitions(d, max_len=N):
            try:
                rows.append((f"P_{list(lam)}", jack(lam, alpha, N), names))
                extra.append({"partition": list(lam), "alpha": str(alpha)})
            except PoleAtAlpha as exc:
                sys.stderr.write(f"P_{list(lam)}: {exc}\n")
        return rows, extra, None
    if fam == "gould-hopper":
        l = args.l_max if args.l_max is not None else 1
        tau = args.tau
        nmax = args.n_max if args.n_max is not None else (args.deg if args.deg is not None else 10)
        rows = [(f"g_{n}^({l})", gould_hopper(n, l, tau), ["x"]) for n in range(nmax + 1)]
        return rows, [{"l": l, "tau": str(tau), "n": n} for n in range(nmax + 1)], None
    if fam == "qbasis":
        m = _int_m(args)
        d = args.deg if args.deg is not None else 3
        gb = GradedBasis.build((N, m), d, cache_root=args.cache_dir or cache.cache_root())
        rows, extra = [], []
        for dd in range(d + 1):
            for i, q in enumerate(gb.basis(dd)):
                rows.append((f"q_{dd},{i}", q, names))
                extra.append({"degree": dd, "role": "basis"})
            for i, q in enumerate(gb.dual(dd)):
                rows.append((f"q^{dd},{i}", q, names))
                extra.append({"degree": dd, "role": "dual"})
        return rows, extra, None
    if fam == "ba":
        m = _int_m(args)
        ba = berest_ba(CouplingParams(N, m))
        return [("P", ba.P, ba_names(N))], [{"phi00": str(ba.phi00), "N": N, "m": m}], None
    if fam == "deformed-newton":
        dp = DeformedParams(args.n1, args.n2, args.k)
        rmax = args.deg if args.deg is not None else 4
        rows = [(f"p_{r}", deformed_newton(r, dp), dp.names()) for r in range(1, rmax + 1)]
        return rows, [{"k": str(dp.k)} for _ in rows], None
    raise UsageError(f"unknown family {fam!r}")


def cmd_compute(args) -> int:
    rows, extra, latex = _compute_rows(args)
    _emit(_render(rows, args.format, extra, latex), args.out)
    return 0


# -- verify ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    opt = SuiteOptions(profile=args.profile, n=args.n, m=args.m, deg=args.deg, l_max=args.l_max)
    rep = run_suite(args.suite, opt)
    _emit(dumps(rep.to_json_obj()), args.out)
    return 0 if rep.passed else 1


# -- cache -----------------------------------------------------------------------

def cmd_cache(args) -> int:
    root = args.cache_dir or cache.cache_root()
    if args.action == "status":
        entries = cache.status(root)
        _emit(dumps({"root": root, "entries": entries}), None)
    elif args.action == "clear":
        _emit(dumps({"root": root, "removed": cache.clear(root)}), None)
    else:
        instances, dmax = CACHE_PROFILES[args.profile]
        if args.n is not None:
            instances = [(N, m) for N, m in instances if N == args.n]
        if args.m is not None:
            instances = [(N, m) for N, m in instances if m == args.m]
        dmax = args.deg if args.deg is not None else dmax
        written = cache.warm(instances, dmax, root)
        _emit(dumps({"root": root, "entries": written}), None)
    return 0


# -- parser ----------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="number of particles N")
    p.add_argument("--m", type=rational, help="coupling m (integer or p/q)")
    p.add_argument("--deg", type=int, help="degree bound")
    p.add_argument("--l-max", type=int, dest="l_max", help="largest l")
    p.add_argument("--profile", choices=("desk", "extended"), default="desk")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--cache-dir", dest="cache_dir", help="cache directory (default: $CMHERM_CACHE)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cmherm", description="Exact Calogero-Moser operator calculus and m-Hermite polynomials")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", help="compute a polynomial family")
    pc.add_argument("family", choices=FAMILIES)
    _common(pc)
    pc.add_argument("--n-max", type=int, dest="n_max", help="largest index for one-variable families")
    pc.add_argument("--tau", type=rational, default=mpq(-1), help="Gould-Hopper parameter")
    pc.add_argument("--n1", type=int, default=1)
    pc.add_argument("--n2", type=int, default=1)
    pc.add_argument("--k", type=rational, default=mpq(2))
    pc.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    pc.set_defaults(func=cmd_compute)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=suite_names())
    _common(pv)
    pv.set_defaults(func=cmd_verify)

    pk = sub.add_parser("cache", help="manage the quasi-invariant basis cache")
    pk.add_argument("action", choices=("status", "clear", "warm"))
    _common(pk)
    pk.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (UsageError, ValueError, CMHermError) as exc:
        sys.stderr.write(f"cmherm: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
