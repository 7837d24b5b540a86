"""Command-line front end.

Every subcommand wraps one library call and prints its result; ``--out`` also
writes a CSV file (header row, 17 significant digits, LF endings). Output is
byte-identical across runs and thread counts unless ``--timing`` asks for
wall-clock seconds.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
import time

from . import constants as C
from . import poly as P
from . import represent as R
from .errors import QuadLCMError
from .primes import PrimeTable

ROW_FIELDS = ["N", "psi", "delta", "ratioR", "regime", "seconds"]


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    with open(path, "w", newline="", encoding="ascii") as fh:
        fh.write(buf.getvalue())


def read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="", encoding="ascii") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def figure_one_grid(limit: int) -> list[int]:
    grid = []
    scale = 10
    while scale <= limit:
        grid.extend(d * scale for d in range(1, 10) if d * scale <= limit)
        scale *= 10
    if not grid or grid[-1] != limit:
        grid.append(limit)
    return grid


def _poly_arg(text: str) -> P.QuadraticPolynomial:
    try:
        return P.QuadraticPolynomial.parse(text)
    except (ValueError, QuadLCMError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("QUADLCM_THREADS", "1")))
    except ValueError:
        return 1


def _mode(args) -> str | None:
    if args.mode == "window":
        return R.WINDOW
    mode = R.default_mode(args.poly)
    if mode == R.WINDOW:
        raise QuadLCMError(f"no exact enumeration for F = {args.poly}; use --mode window")
    return mode


def _build(args) -> R.RepresentedSet:
    return R.build_represented_set(args.poly, args.limit, _mode(args), args.window_factor, args.threads)


class _Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.t0 = time.perf_counter()

    def seconds(self):
        return round(time.perf_counter() - self.t0, 3) if self.enabled else None


def cmd_classify(args) -> None:
    rep = P.classify(args.poly)
    print(rep.regime)
    print(f"predicted_psi_order,{rep.predicted_psi_order}")
    print(f"derivatives_dependent,{rep.derivatives_dependent}")
    for key, value in rep.evidence.items():
        if isinstance(value, tuple):
            value = " ".join(str(v) for v in value)
        print(f"{key},{value}")


def _single_row(args, psi=None, dlt=None):
    regime = P.classify(args.poly).regime
    return [args.limit, psi, dlt, None, regime, args.timer.seconds()]


def cmd_psi(args) -> None:
    rs = _build(args)
    table = PrimeTable(args.limit, threads=args.threads)
    value = R.lcm_of_set(rs, table).log_value if rs.count() else 0.0
    print(fmt(value))
    if args.out:
        write_csv(args.out, ROW_FIELDS, [_single_row(args, psi=value, dlt=R.delta(rs))])


def cmd_delta(args) -> None:
    value = R.delta(_build(args))
    print(fmt(value))
    if args.out:
        write_csv(args.out, ROW_FIELDS, [_single_row(args, dlt=value)])


def cmd_psibox(args) -> None:
    value = R.psi_box(args.poly, args.limit, threads=args.threads)
    print(fmt(value))
    if args.out:
        write_csv(args.out, ROW_FIELDS, [_single_row(args, psi=value)])


def cmd_sk(args) -> None:
    rs = _build(args)
    table = PrimeTable(args.limit, threads=args.threads)
    ks = range(1, args.kmax + 1) if args.k is None else [args.k]
    counts = [R.count_sk(rs, table, k) for k in ks]
    for k, s in zip(ks, counts):
        print(f"{k},{s}")
    if args.out:
        header = ROW_FIELDS + [f"S_{k}" for k in ks]
        write_csv(args.out, header, [_single_row(args, dlt=R.delta(rs)) + counts])


def cmd_skpair(args) -> None:
    rs = _build(args)
    value = R.count_sk_pair(rs, PrimeTable(args.limit, threads=args.threads), args.k1, args.k2)
    print(value)
    if args.out:
        write_csv(args.out, ROW_FIELDS + ["k1", "k2", "S_k1k2"], [_single_row(args) + [args.k1, args.k2, value]])


def cmd_figure1(args) -> None:
    grid = figure_one_grid(args.limit)
    cap = max(R.FIGURE_ONE_CAP, args.limit) if args.allow_large else R.FIGURE_ONE_CAP
    if args.limit > cap:
        raise QuadLCMError(f"--limit above {cap}; pass --allow-large to override")
    rs = R.build_represented_set(R.X2Y2_PLUS_1, args.limit, R.EXACT_DEFINITE, threads=args.threads)
    table = PrimeTable(args.limit, threads=args.threads)
    series = R.figure_one_series(grid, table, args.threads, cap, rs)
    seconds = args.timer.seconds()
    rows = [[n, None, rs.count(n) / n, r, P.THM3_GENERIC, seconds] for n, r in series]
    for n, r in series:
        print(f"{n},{fmt(r)}")
    if args.out:
        write_csv(args.out, ROW_FIELDS, rows)


def cmd_constants(args) -> None:
    lr = C.landau_ramanujan(args.digits)
    c1 = C.conjecture_c1(args.cutoff)
    rows = [
        [lr.name, lr.value, lr.cutoff, lr.error_estimate],
        [c1.name, c1.value, c1.cutoff, c1.error_estimate],
        ["C1/L", c1.value / lr.value, c1.cutoff, c1.error_estimate / lr.value + lr.error_estimate],
    ]
    for k in range(2, args.kmax + 1):
        ck = C.conjecture_ck(k, c1)
        rows.append([ck.name, ck.value, ck.cutoff, ck.error_estimate])
    if args.cf_kmax:
        cf = C.conjecture_cf(args.cf_kmax, c1)
        rows.append([f"cF_partial({cf.kmax})", cf.partial_average, cf.kmax, None])
    for row in rows:
        print(",".join(fmt(v) for v in row))
    if args.out:
        write_csv(args.out, ["name", "value", "cutoff", "error_estimate"], rows)


def cmd_simulate(args) -> None:
    rows = []
    for seed in range(args.seed, args.seed + args.seeds):
        o = C.simulate_random_set(args.limit, args.density, seed)
        rows.append([o.limit, o.density, o.seed, o.psi_value, o.predicted_value, o.psi_value / o.predicted_value])
        print(",".join(fmt(v) for v in rows[-1]))
    if args.out:
        write_csv(args.out, ["N", "density", "seed", "psi", "predicted", "ratio"], rows)


def cmd_fermat(args) -> None:
    table = PrimeTable(args.limit, threads=args.threads)
    fact, value = R.fermat_psi_closed_form(args.limit, table)
    print(fmt(value))
    if args.check:
        rs = R.build_represented_set(R.X2Y2, args.limit, R.EXACT_DEFINITE, threads=args.threads)
        same = R.lcm_of_set(rs, table) == fact
        print("exponent maps agree" if same else "exponent maps DIFFER")
        if not same:
            raise QuadLCMError("closed form disagrees with enumeration")
    if args.out:
        write_csv(args.out, ROW_FIELDS, [[args.limit, value, None, None, P.THM2_ZERO_D, args.timer.seconds()]])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive_int, default=_default_threads(),
                        help="worker threads (default: $QUADLCM_THREADS or 1)")
    common.add_argument("--out", help="also write a CSV file here")
    common.add_argument("--timing", action="store_true", help="fill the seconds column with wall time")

    with_poly = argparse.ArgumentParser(add_help=False)
    with_poly.add_argument("--poly", type=_poly_arg, required=True, help="coefficients a,b,c,e,f,g")

    with_limit = argparse.ArgumentParser(add_help=False)
    with_limit.add_argument("--limit", type=_positive_int, required=True, help="N")

    enum = argparse.ArgumentParser(add_help=False)
    enum.add_argument("--mode", choices=["exact", "window"], default="exact")
    enum.add_argument("--window-factor", type=float, default=R.DEFAULT_WINDOW_FACTOR)

    parser = argparse.ArgumentParser(prog="quadlcm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common, with_poly])
    p.set_defaults(func=cmd_classify)
    for name, func in (("psi", cmd_psi), ("delta", cmd_delta)):
        p = sub.add_parser(name, parents=[common, with_poly, with_limit, enum])
        p.set_defaults(func=func)
    p = sub.add_parser("psibox", parents=[common, with_poly, with_limit])
    p.set_defaults(func=cmd_psibox)
    p = sub.add_parser("sk", parents=[common, with_poly, with_limit, enum])
    p.add_argument("--k", type=_positive_int)
    p.add_argument("--kmax", type=_positive_int, default=20)
    p.set_defaults(func=cmd_sk)
    p = sub.add_parser("skpair", parents=[common, with_poly, with_limit, enum])
    p.add_argument("--k1", type=_positive_int, required=True)
    p.add_argument("--k2", type=_positive_int, required=True)
    p.set_defaults(func=cmd_skpair)
    p = sub.add_parser("figure1", parents=[common, with_limit])
    p.add_argument("--allow-large", action="store_true", help=f"lift the N <= {R.FIGURE_ONE_CAP} cap")
    p.set_defaults(func=cmd_figure1)
    p = sub.add_parser("constants", parents=[common])
    p.add_argument("--digits", type=int, default=C.MAX_DIGITS)
    p.add_argument("--cutoff", type=_positive_int, default=C.DEFAULT_CUTOFF)
    p.add_argument("--kmax", type=_positive_int, default=12, help="list C_k for k <= kmax")
    p.add_argument("--cf-kmax", type=_positive_int, help="also report the partial average of C_k")
    p.set_defaults(func=cmd_constants)
    p = sub.add_parser("simulate", parents=[common, with_limit])
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=_positive_int, default=1, help="number of consecutive seeds")
    p.set_defaults(func=cmd_simulate)
    p = sub.add_parser("fermat", parents=[common, with_limit])
    p.add_argument("--check", action="store_true", help="compare against enumeration")
    p.set_defaults(func=cmd_fermat)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.timer = _Timer(args.timing)
    try:
        args.func(args)
    except QuadLCMError as exc:
        print(f"quadlcm {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
