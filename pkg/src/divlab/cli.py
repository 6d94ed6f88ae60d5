"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
resource error.
"""

import argparse
import math
import os
import sys
from fractions import Fraction

from .dirichlet_approx import approx_2d
from .divisors import (
    X_MAX,
    delta,
    load_tau_table,
    save_tau_table,
    tau_sieve,
)
from .errors import ResourceLimitError
from .meanvalue import PsiParams, i_r_parseval, psi_weights
from .oscillatory import OscSpec, i_pm, i_pm_stationary
from .scan import ScanConfig, parse_step, run_scan, write_csv
from .shifts import ShiftQuery, s_sum, shift_search
from .verify import SUITES, residual_probe, run_suite

USAGE_ERROR, VERIFY_ERROR, RESOURCE_ERROR = 2, 1, 3


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _cmd_dx(args) -> int:
    if not 1 <= args.x <= X_MAX:
        raise ValueError(f"--x must lie in [1, {X_MAX}]")
    es = delta(args.x)
    print(f"x={es.x} D={es.d} main={_fmt(float(es.main))} delta={_fmt(es.delta)}")
    return 0


def _cmd_scan(args) -> int:
    config = ScanConfig(
        x_lo=args.lo,
        x_hi=args.hi,
        step=parse_step(args.step),
        theta_exponents=tuple(args.theta) if args.theta else (0.25, 1.0 / 3.0),
        workers=args.workers,
        output_path=args.out,
    )
    rows = run_scan(config)
    write_csv(rows, config)
    if args.out != "-":
        print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _parse_shift(text: str):
    if "/" in text:
        return Fraction(text)
    val = float(text)
    if val == int(val):
        return Fraction(int(val))
    return val


def _cmd_shift_count(args) -> int:
    shift = _parse_shift(args.shift)
    mode = "rational" if isinstance(shift, Fraction) else "real"
    query = ShiftQuery(x=args.x, shift=shift, mode=mode, tol=args.tol)
    pts = query.points()
    print(f"x={args.x} shift={args.shift} mode={mode} count={len(pts)}")
    for u, v in pts:
        print(f"{u} {v}")
    return 0


def _cmd_approx2d(args) -> int:
    res = approx_2d(args.xi, args.eta, args.tau)
    print(
        f"a={res.a} b={res.b} q={res.q} err_xi={_fmt(res.err_xi)} "
        f"err_eta={_fmt(res.err_eta)} q_cap={_fmt((1 + math.sqrt(res.tau)) ** 2)} "
        f"err_cap={_fmt(1.0 / (res.q * math.sqrt(res.tau)))} "
        f"invariants={'ok' if res.invariants_hold() else 'VIOLATED'}"
    )
    return 0 if res.invariants_hold() else VERIFY_ERROR


def _cmd_oscint(args) -> int:
    spec = OscSpec(m=args.m, p=args.p, N=args.N, x=args.x, phase_sign=args.phase_sign)
    val = i_pm(spec, tol=args.tol)
    print(f"I = {_fmt(val.real)} + {_fmt(val.imag)}i  |I| = {_fmt(abs(val))}")
    if args.phase_sign == "plus" and args.m >= 1:
        main, valid = i_pm_stationary(spec)
        if valid:
            rel = abs(val - main) / abs(main)
            print(
                f"stationary main = {_fmt(main.real)} + {_fmt(main.imag)}i  "
                f"rel_err = {_fmt(rel)}"
            )
        else:
            print("stationary point outside [N, 2N+1]")
    return 0


def _cmd_meanvalue(args) -> int:
    params = PsiParams(N=args.N, x=args.x, k=args.k, Delta=args.Delta, delta0=args.delta0)
    weights = psi_weights(params)
    res = i_r_parseval(args.r, weights, args.s_max)
    gap = abs(res.direct - res.parseval)
    print(
        f"r={_fmt(res.r)} direct={_fmt(res.direct)} parseval={_fmt(res.parseval)}\n"
        f"|direct-parseval|={_fmt(gap)} tail_bound={_fmt(res.tail_bound)} "
        f"s_max={res.s_trunc} |a0|={_fmt(abs(res.a0))}"
    )
    return 0 if gap <= res.tail_bound + 1e-6 * res.direct + 1e-9 else VERIFY_ERROR


def _cmd_shift_search(args) -> int:
    baseline = abs(s_sum(args.x, 0.0))
    theta, best = shift_search(args.x, args.theta_max, args.step)
    print(
        f"theta*={_fmt(theta)} |S(x+theta*,0)|={_fmt(best)} |S(x,0)|={_fmt(baseline)}"
    )
    return 0


def _cmd_residual_probe(args) -> int:
    sup1, sup2, xs = residual_probe(args.lo, args.hi, args.points)
    print(f"grid: {len(xs)} points in [{args.lo}, {args.hi}]")
    print(f"sup |delta - 1*S(x,0)| = {_fmt(sup1)}")
    print(f"sup |delta - 2*S(x,0)| = {_fmt(sup2)}")
    bounded = [c for c, s in ((1, sup1), (2, sup2)) if s <= args.bound]
    if len(bounded) == 1:
        print(f"bounded residual coefficient: c={bounded[0]} (bound {args.bound})")
        return 0
    print(f"no unique bounded coefficient at bound {args.bound}: {bounded}")
    return VERIFY_ERROR


def _cmd_verify(args) -> int:
    result = run_suite(args.suite, args.seed, args.cases)
    status = "PASS" if result.ok else "FAIL"
    print(
        f"suite {result.name}: {result.cases - result.failures}/{result.cases} "
        f"pass [{status}]"
    )
    for line in result.lines:
        print(f"  {line}")
    return 0 if result.ok else VERIFY_ERROR


def _cache_dir(args) -> str:
    if args.cache_dir:
        return args.cache_dir
    return os.environ.get("DIVLAB_CACHE_DIR", ".")


def _cmd_cache(args) -> int:
    if args.action == "build":
        if args.lo is None or args.hi is None:
            raise ValueError("cache build needs --lo and --hi")
        table = tau_sieve(args.lo, args.hi)
        path = os.path.join(_cache_dir(args), f"tau_{args.lo}_{args.hi}.tau1")
        save_tau_table(table, path)
        print(f"wrote {path} ({len(table)} entries)")
        return 0
    if args.file is None:
        raise ValueError(f"cache {args.action} needs --file")
    table = load_tau_table(args.file)
    if args.action == "info":
        print(
            f"lo={table.lo} hi={table.hi} len={len(table)} "
            f"min={int(table.values.min())} max={int(table.values.max())}"
        )
        return 0
    # verify: re-sieve the window and compare
    fresh = tau_sieve(table.lo, table.hi)
    if (fresh.values == table.values).all():
        print(f"{args.file}: ok ({len(table)} entries)")
        return 0
    print(f"{args.file}: MISMATCH against fresh sieve")
    return VERIFY_ERROR


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="divlab",
        description="Divisor-sum error terms, shifted hyperbolas, and "
        "oscillatory-integral certificates.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dx", help="exact D(x), main term, and delta(x)")
    p.add_argument("--x", type=int, required=True)
    p.set_defaults(func=_cmd_dx)

    p = sub.add_parser("scan", help="range scan with CSV output")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--step", default="1", help="integer stride or log:PPD")
    p.add_argument("--theta", type=float, action="append", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("shift-count", help="lattice points on (u+shift)v = x")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--shift", required=True, help="rational a/q or real")
    p.add_argument("--tol", type=float, default=0.0)
    p.set_defaults(func=_cmd_shift_count)

    p = sub.add_parser("approx2d", help="simultaneous rational approximation")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.set_defaults(func=_cmd_approx2d)

    p = sub.add_parser("oscint", help="block oscillatory integral")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--N", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--phase-sign", choices=("plus", "minus"), default="plus")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_oscint)

    p = sub.add_parser("meanvalue", help="mean square: direct vs Parseval")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--N", type=float, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--Delta", type=float, default=0.1)
    p.add_argument("--delta0", type=float, default=0.05)
    p.add_argument("--s-max", type=int, default=1024)
    p.set_defaults(func=_cmd_meanvalue)

    p = sub.add_parser("shift-search", help="grid minimizer of |S(x+theta, 0)|")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--theta-max", type=float, required=True)
    p.add_argument("--step", type=float, default=0.5)
    p.set_defaults(func=_cmd_shift_search)

    p = sub.add_parser(
        "residual-probe",
        help="which coefficient c keeps delta - c*S(x,0) bounded",
    )
    p.add_argument("--lo", type=int, default=100)
    p.add_argument("--hi", type=int, default=10**6)
    p.add_argument("--points", type=int, default=160)
    p.add_argument("--bound", type=float, default=10.0)
    p.set_defaults(func=_cmd_residual_probe)

    p = sub.add_parser("verify", help="seeded property suites")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cases", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("cache", help="tau sieve cache management")
    p.add_argument("action", choices=("build", "info", "verify"))
    p.add_argument("--lo", type=int, default=None)
    p.add_argument("--hi", type=int, default=None)
    p.add_argument("--file", default=None)
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=_cmd_cache)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ResourceLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RESOURCE_ERROR


if __name__ == "__main__":
    sys.exit(main())
