"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 I/O, 3 parse, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .arith import SpfSieve, _factor_small, average_singular, ramanujan_c, ramanujan_c_direct
from .enumerator import EnumConfig, default_workers, enumerate_semigroup
from .equidist import DEFAULT_MODULI, error_table
from .errors import ParseError
from .heuristic import DEFAULT_WINDOW, fit_growth, heuristic_table, partial_sum_check, ratio_table
from .io import (
    atomic_write,
    compare_csv_text,
    equi_csv_text,
    manifest_path,
    read_mult_csv,
    write_manifest,
    write_mult_csv,
)
from .sl2 import MAX_MODULUS, cbar_bruteforce, cbar_closed

log = logging.getLogger("cfml")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_PARSE, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threads(args) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise UsageError(f"--threads must be >= 1, got {args.threads}")
        return args.threads
    try:
        return default_workers()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _config(args, moduli=0) -> EnumConfig:
    try:
        return EnumConfig(alphabet=args.alphabet, max_n=args.max_n,
                          workers=_threads(args), moduli=moduli)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_writable(*paths) -> None:
    for p in paths:
        if p is None:
            continue
        parent = Path(p).resolve().parent
        if not parent.is_dir():
            raise OSError(f"output directory does not exist: {parent}")


def cmd_enumerate(args) -> int:
    cfg = _config(args)
    _check_writable(args.out)
    t0 = time.perf_counter()
    tally, _ = enumerate_semigroup(cfg)
    write_mult_csv(args.out, tally)
    seconds = time.perf_counter() - t0
    write_manifest(manifest_path(args.out), command="enumerate", alphabet=cfg.alphabet,
                   max_n=cfg.max_n, threads=cfg.workers, outputs=[args.out], seconds=seconds,
                   extra={"total_nodes": tally.total_nodes})
    print(f"alphabet={cfg.alphabet} max_n={cfg.max_n} total_nodes={tally.total_nodes} "
          f"seconds={seconds:.3f}")
    return EXIT_OK


def cmd_compare(args) -> int:
    if not 0 < args.window < 1:
        raise UsageError(f"--window must lie in (0, 1), got {args.window}")
    _check_writable(args.out, args.plot, args.growth_plot)
    t0 = time.perf_counter()
    tally = read_mult_csv(args.input)
    if tally.N < 2:
        raise ParseError("no data rows", args.input)
    fit = fit_growth(tally, args.window)
    sieve = SpfSieve(tally.N)
    singular, heur = heuristic_table(tally, fit, sieve)
    ratio = ratio_table(tally, fit, sieve)
    n = np.arange(2, tally.N + 1)
    atomic_write(args.out, compare_csv_text(n, tally.mult[2:], heur[2:], singular[2:], ratio[2:]))
    outputs = [args.out]
    if args.plot:
        from .plotting import ratio_plot

        ratio_plot(args.plot, n, ratio[2:])
        outputs.append(args.plot)
    if args.growth_plot:
        from .plotting import growth_plot

        growth_plot(args.growth_plot, n, tally.ball[2:], fit)
        outputs.append(args.growth_plot)
    psum = partial_sum_check(tally, fit, sieve)
    zero_targets = int((tally.mult[2:] == 0).sum())
    seconds = time.perf_counter() - t0
    write_manifest(manifest_path(args.out), command="compare", max_n=tally.N, window=args.window,
                   outputs=outputs, seconds=seconds,
                   extra={"input": str(args.input), "c": fit.c, "two_delta": fit.two_delta,
                          "rms_residual": fit.rms_residual, "partial_sum_check": psum,
                          "zero_targets": zero_targets, "ratio": "exact/heuristic"})
    print(f"c={fit.c:.9g}")
    print(f"two_delta={fit.two_delta:.9g}")
    print(f"rms_residual={fit.rms_residual:.3g} window=[{fit.window_lo},{fit.window_hi}]")
    print(f"partial_sum_check={psum:.9g}")
    print(f"zero_targets={zero_targets}")
    return EXIT_OK


def cmd_equidist(args) -> int:
    if args.moduli < 1:
        raise UsageError(f"--moduli must be >= 1, got {args.moduli}")
    cfg = _config(args, moduli=args.moduli)
    _check_writable(args.out, args.plot)
    t0 = time.perf_counter()
    tally, hist = enumerate_semigroup(cfg)
    if hist.total == 0:
        raise UsageError(f"no elements with denominator <= {cfg.max_n}")
    table = error_table(hist)
    atomic_write(args.out, equi_csv_text(table))
    outputs = [args.out]
    if args.plot:
        from .plotting import equidist_plot

        equidist_plot(args.plot, [r[0] for r in table], [r[2] for r in table])
        outputs.append(args.plot)
    seconds = time.perf_counter() - t0
    write_manifest(manifest_path(args.out), command="equidist", alphabet=cfg.alphabet,
                   max_n=cfg.max_n, moduli=cfg.moduli, threads=cfg.workers, outputs=outputs,
                   seconds=seconds, extra={"total": hist.total})
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def _report(check: str, rows: list[dict], extra=None) -> int:
    failures = [r for r in rows if not r["ok"]]
    doc = {"check": check, "cases": len(rows), "passed": not failures}
    if extra:
        doc.update(extra)
    if failures:
        doc["first_failure"] = failures[0]
    doc["rows"] = rows
    print(json.dumps(doc, indent=2))
    if failures:
        print(f"counterexample: {json.dumps(failures[0])}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _prime_power(q: int) -> tuple[int, int]:
    fac = _factor_small(q) if q >= 2 else []
    if len(fac) != 1:
        raise UsageError(f"{q} is not a prime power")
    return fac[0]


def cmd_verify_cbar(args) -> int:
    rows = []
    for q in args.prime_powers:
        p, t = _prime_power(q)
        if q > MAX_MODULUS:
            raise UsageError(f"prime power {q} exceeds brute-force limit {MAX_MODULUS}")
        for n in range(args.n_max + 1):
            brute, closed = cbar_bruteforce(q, n), cbar_closed(p, t, n)
            rows.append({"q": q, "p": p, "t": t, "n": n, "bruteforce": str(brute),
                         "closed": str(closed), "ok": brute == closed})
    return _report("cbar", rows)


def cmd_verify_ramanujan(args) -> int:
    rows = []
    worst = 0.0
    for q in range(1, args.q_max + 1):
        errs = [abs(ramanujan_c(q, n) - ramanujan_c_direct(q, n)) for n in range(args.n_max + 1)]
        err = max(errs)
        worst = max(worst, err)
        bad = [n for n, e in enumerate(errs) if not e < args.tol]
        row = {"q": q, "max_abs_error": err, "ok": not bad}
        if bad:
            row["n"] = bad[0]
            row["closed"] = ramanujan_c(q, bad[0])
            row["direct"] = str(ramanujan_c_direct(q, bad[0]))
        rows.append(row)
    return _report("ramanujan", rows, {"tolerance": args.tol, "max_abs_error": worst})


def cmd_verify_avg(args) -> int:
    N = args.n_max
    if N < 1:
        raise UsageError(f"--n-max must be >= 1, got {N}")
    sieve = SpfSieve(N)
    checkpoints = [10**k for k in range(3, 20) if 10**k < N] + [N]
    rows = []
    prev = None
    for M in checkpoints:
        err = abs(average_singular(M, sieve) - 1.0)
        ok = err < args.tol if M == N else True
        if prev is not None:
            ok = ok and err < prev
        rows.append({"N": M, "abs_error": err, "ok": ok})
        prev = err
    return _report("avg-singular", rows, {"tolerance": args.tol})


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cfml", description="Denominator multiplicities of bounded continued fractions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def enum_flags(p):
        p.add_argument("--alphabet", type=int, default=5, help="largest partial quotient (default 5)")
        p.add_argument("--max-n", type=int, required=True, help="denominator bound N")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default $CFML_THREADS or CPU count)")

    p = sub.add_parser("enumerate", help="tally exact multiplicities, write n,mult,ball CSV")
    enum_flags(p)
    p.add_argument("--out", type=Path, default=Path("mult.csv"))
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("compare", help="fit growth and compare exact counts to the heuristic")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--window", type=float, default=DEFAULT_WINDOW, help="fit window fraction of N")
    p.add_argument("--out", type=Path, default=Path("compare.csv"))
    p.add_argument("--plot", type=Path, default=None, help="SVG scatter of ratios")
    p.add_argument("--growth-plot", type=Path, default=None, help="SVG of ball growth and fit")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("equidist", help="largest residue-class errors for moduli 1..M")
    enum_flags(p)
    p.add_argument("--moduli", type=int, default=DEFAULT_MODULI)
    p.add_argument("--out", type=Path, default=Path("equi.csv"))
    p.add_argument("--plot", type=Path, default=None)
    p.set_defaults(func=cmd_equidist)

    p = sub.add_parser("verify", help="oracle-equivalence sweeps")
    vsub = p.add_subparsers(dest="check", required=True, parser_class=_Parser)

    v = vsub.add_parser("cbar", help="brute-force local factors vs closed form")
    v.add_argument("--prime-powers", type=lambda s: [int(x) for x in s.split(",") if x.strip()],
                   default=[2, 3, 4, 5, 8, 9, 25, 27])
    v.add_argument("--n-max", type=int, default=12)
    v.set_defaults(func=cmd_verify_cbar)

    v = vsub.add_parser("ramanujan", help="Moebius form vs direct exponential sum")
    v.add_argument("--q-max", type=int, default=200)
    v.add_argument("--n-max", type=int, default=200)
    v.add_argument("--tol", type=float, default=1e-6)
    v.set_defaults(func=cmd_verify_ramanujan)

    v = vsub.add_parser("avg-singular", help="running mean of the singular series")
    v.add_argument("--n-max", type=int, default=10**6)
    v.add_argument("--tol", type=float, default=1e-3)
    v.set_defaults(func=cmd_verify_avg)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if getattr(args, "n_max", 0) is not None and getattr(args, "n_max", 0) < 0:
            raise UsageError("--n-max must be >= 0")
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cfml: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"cfml: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cfml: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
