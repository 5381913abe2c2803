"""Command-line front end: manin-d4 {count,peyre,verify,asymptotic,export}."""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import SCHEMA_VERSION, _io

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    """Integers, also written as 1e6 or 10^6."""
    s = text.strip().replace("_", "")
    m = re.fullmatch(r"(\d+)\^(\d+)", s)
    try:
        if m:
            v = int(m.group(1)) ** int(m.group(2))
        elif re.fullmatch(r"\d+[eE]\d+", s):
            mant, exp = re.split("[eE]", s)
            v = int(mant) * 10 ** int(exp)
        else:
            v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return v


def _heights(text: str) -> list[int]:
    return [_positive_int(t) for t in text.split(",") if t.strip()]


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="manin-d4", description="Rational points of bounded height on x0(x1+x2+x3)^2 = x1 x2 x3.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, threads=True):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", type=Path, help="write to this file instead of stdout")
        if threads:
            sp.add_argument("--threads", type=_positive_int, default=1)

    sp = sub.add_parser("count", help="N(B) by brute force and/or the torsor")
    sp.add_argument("--height", "-B", type=_positive_int, required=True)
    sp.add_argument("--method", choices=("brute", "torsor", "both"), default="torsor")
    common(sp)

    sp = sub.add_parser("peyre", help="the leading constant with its error budget")
    sp.add_argument("--primes", type=_positive_int, default=10**6, help="Euler product cutoff P (>= 100)")
    sp.add_argument("--quad-tol", type=_positive_float, default=1e-9)
    sp.add_argument("--root-tol", type=_positive_float, default=1e-12)
    sp.add_argument("--mc-samples", type=_positive_int, default=2_000_000)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, threads=False)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", default="all")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--height", "-B", type=_positive_int, default=100)
    common(sp)

    sp = sub.add_parser("asymptotic", help="N(B) / (B log(B)^6) against the leading constant")
    sp.add_argument("--heights", type=_heights, default=[])
    common(sp)

    sp = sub.add_parser("export", help="CSV of points or torsor coordinates")
    sp.add_argument("--height", "-B", type=_positive_int, required=True)
    sp.add_argument("--kind", choices=("points", "torsor"), default="points")
    sp.add_argument("--method", choices=("brute", "torsor"), default="torsor")
    sp.add_argument("--threads", type=_positive_int, default=1)
    sp.add_argument("--out", type=Path)
    return p


# --------------------------------------------------------------------------

def _emit(args, payload: dict, header: list[str], rows: list) -> str:
    if args.format == "csv":
        return _io.csv_text(header, rows)
    return _io.dumps({"schema_version": SCHEMA_VERSION, "command": args.command, **payload})


def run_count(args) -> tuple[int, str]:
    from .torsor import brute_force_count, torsor_count

    B = args.height
    counts = {}
    if args.method in ("brute", "both"):
        counts["brute"] = brute_force_count(B, threads=args.threads).count
    if args.method in ("torsor", "both"):
        counts["torsor"] = torsor_count(B, threads=args.threads).count
    match = len(set(counts.values())) == 1
    payload = {"B": B, "counts": counts}
    if args.method == "both":
        payload["match"] = match
    text = _emit(args, payload, ["method", "B", "count"], [(m, B, n) for m, n in counts.items()])
    return (EXIT_OK if match else EXIT_FAIL), text


def run_peyre(args) -> tuple[int, str]:
    from .density import QuadratureConfig, peyre_constant

    if args.primes < 100:
        raise UsageError("--primes must be at least 100")
    try:
        cfg = QuadratureConfig(root_tol=args.root_tol, quad_tol=args.quad_tol, mc_samples=args.mc_samples, rng_seed=args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    try:
        br = peyre_constant(cfg, args.primes)
    except ArithmeticError as e:
        print(f"manin-d4: {e}", file=sys.stderr)
        return EXIT_FAIL, ""
    om = br.omega_detail
    fields = {
        "alpha": br.alpha,
        "beta": br.beta,
        "omega_inf": br.omega_inf,
        "omega_inf_err": br.omega_inf_err,
        "omega_inf_quad": om.quad_value,
        "omega_inf_quad_err": om.quad_error,
        "omega_inf_mc": om.mc_value,
        "omega_inf_mc_err": om.mc_error,
        "omega_inf_rel_diff": om.rel_diff,
        "euler_P": br.euler_P,
        "euler_value": br.euler_product,
        "euler_tail": br.euler_tail,
        "c_VH": br.c_VH,
        "c_VH_err": br.c_VH_err,
        "mc_samples": cfg.mc_samples,
        "seed": cfg.rng_seed,
    }
    return EXIT_OK, _emit(args, fields, ["field", "value"], list(fields.items()))


def run_verify(args) -> tuple[int, str]:
    from .verify import SUITES, VerifyOptions, run_suite

    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    rep = run_suite(args.suite, VerifyOptions(seed=args.seed, height=args.height, threads=args.threads))
    rows = [c.row() for c in rep.checks]
    payload = {"suite": args.suite, "seed": args.seed, "height": args.height, "passed": rep.passed, "checks": rows}
    header = ["suite", "check", "passed", "value", "bound"]
    text = _emit(args, payload, header, [[r[k] if r[k] is not None else "" for k in header] for r in rows])
    return (EXIT_OK if rep.passed else EXIT_FAIL), text


def run_asymptotic(args) -> tuple[int, str]:
    from .density.peyre import load_fixture
    from .torsor import NOTE, asymptotic_report

    fix = load_fixture()
    c = float(fix["c_VH"])
    rows = asymptotic_report(args.heights, c, threads=args.threads)
    table = [(r.B, r.N, r.normalized, r.ratio) for r in rows]
    payload = {
        "c_VH": c,
        "band": [0.1 * c, 10 * c],
        "note": NOTE,
        "rows": [{"B": b, "N": n, "normalized": x, "ratio": y} for b, n, x, y in table],
    }
    if args.format == "csv":
        print(f"note: {NOTE}", file=sys.stderr)
    return EXIT_OK, _emit(args, payload, ["B", "N", "normalized", "ratio"], table)


def run_export(args) -> tuple[int, str]:
    from .torsor import points_csv, torsor_csv

    if args.kind == "torsor":
        return EXIT_OK, torsor_csv(args.height, threads=args.threads)
    return EXIT_OK, points_csv(args.height, method=args.method, threads=args.threads)


RUN = {"count": run_count, "peyre": run_peyre, "verify": run_verify, "asymptotic": run_asymptotic, "export": run_export}


def main(argv=None) -> int:
    from .torsor import CapError

    try:
        args = build_parser().parse_args(argv)
        status, text = RUN[args.command](args)
    except (UsageError, CapError, OverflowError, ValueError) as e:
        print(f"manin-d4: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if text:
        if args.out is not None:
            args.out.write_text(text)
        else:
            sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
