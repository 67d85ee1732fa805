"""Command line front end: ``gbo {optimize,sweep,eval,verify,correlate}``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import sys
from functools import partial

from . import __version__
from .metrics import MetricSpec, evaluate_report
from .mixture import CONVENTIONS
from .proposals import ScaleConstants
from .records import (DataError, SampleRecord, dumps, optimize_sample, prediction_row,
                      read_predictions, read_samples)
from .selection import Strategy
from .sweep import PRESETS, SweepConfig, best_lambdas, correlate, ordered_map, run_sweep, write_sweep_csv
from .verify import run_verification

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _optimize_line(sample: SampleRecord, lam: float, strategy: Strategy, convention: str) -> str:
    return dumps(prediction_row(sample.id, optimize_sample(sample, lam, strategy, convention)))


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="\n")


def _scales(args) -> ScaleConstants:
    try:
        return ScaleConstants(args.sigma_gauss)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_optimize(args) -> int:
    if args.preset is not None:
        lam = PRESETS[args.preset]
    elif args.lam is not None:
        lam = args.lam
    else:
        raise UsageError("one of --lambda or --preset is required")
    if not lam >= 0:
        raise UsageError(f"--lambda must be >= 0, got {lam}")
    samples = read_samples(args.input, _scales(args))
    fn = partial(_optimize_line, lam=lam, strategy=Strategy.parse(args.select),
                 convention=args.sigma_convention)
    lines = ordered_map(fn, samples, args.workers)
    out = _open_out(args.output)
    try:
        for line in lines:
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        metrics = tuple(MetricSpec.parse(m) for m in args.metrics) if args.metrics else None
        cfg = SweepConfig(args.lambda_min, args.lambda_max, args.lambda_step,
                          **({"metrics": metrics} if metrics else {}),
                          strategy=args.select, convention=args.sigma_convention,
                          threshold_mode=args.threshold_mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    samples = read_samples(args.input, _scales(args))
    rows = run_sweep(samples, cfg, args.workers)
    out = _open_out(args.output)
    try:
        write_sweep_csv(out, rows, cfg)
    finally:
        if out is not sys.stdout:
            out.close()
    for name, (lam, val) in best_lambdas(rows).items():
        print(f"best {name}: {val:.2f} at lambda={lam:.{cfg.decimals}f}", file=sys.stderr)
    return EXIT_OK


def cmd_eval(args) -> int:
    samples = read_samples(args.input)
    preds = read_predictions(args.predictions)
    ids = {s.id for s in samples}
    missing = sorted(ids - preds.keys())
    extra = sorted(preds.keys() - ids)
    if missing or extra:
        raise DataError(f"prediction ids do not match samples; missing: {missing[:10]}, unknown: {extra[:10]}")
    no_gt = [s.id for s in samples if s.ground_truth is None]
    if no_gt:
        raise DataError(f"samples without ground truth: {', '.join(no_gt[:10])}")
    try:
        specs = [MetricSpec(n, m) for n in args.n for m in args.m] + [MetricSpec(n) for n in args.n]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    scored = [([seg for seg in preds[s.id]], s.ground_truth) for s in samples]
    try:
        report = evaluate_report(scored, specs, args.threshold_mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(report.table())
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["metric", "value"])
            for k, v in report.values.items():
                w.writerow([k, format(v, ".6g")])
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    rep = run_verification(args.seed, args.trials)
    print(rep.summary())
    for r in rep.failures[:20]:
        print(f"  violation: {r}")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_correlate(args) -> int:
    table = correlate(args.csv_a, args.csv_b, args.columns)
    out = _open_out(args.output)
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["metric", "pearson"])
        for k, v in table.items():
            w.writerow([k, format(v, ".6g")])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gbo", description="Optimal segment boundaries from temporal proposals.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, workers=True):
        sp.add_argument("--select", default="only_iou", choices=[s.value for s in Strategy])
        sp.add_argument("--sigma-convention", default="raw", choices=CONVENTIONS,
                        help="how a mixture's effective width enters the Gaussian closed form")
        sp.add_argument("--sigma-gauss", type=float, default=9.0,
                        help="Gaussian scale constant; the other kernel constants derive from it")
        if workers:
            sp.add_argument("--workers", type=int, default=None, help="worker processes (default: all cores)")
        sp.add_argument("--output", "-o", default=None, help="output path (default: stdout)")

    sp = sub.add_parser("optimize", help="optimize every proposal and write ranked segments (JSONL)")
    sp.add_argument("input")
    lam = sp.add_mutually_exclusive_group()
    lam.add_argument("--lambda", dest="lam", type=float)
    lam.add_argument("--preset", choices=sorted(PRESETS))
    common(sp)
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("sweep", help="evaluate a grid of penalty weights (CSV)")
    sp.add_argument("input")
    sp.add_argument("--lambda-min", type=float, default=0.001)
    sp.add_argument("--lambda-max", type=float, default=1.0)
    sp.add_argument("--lambda-step", type=float, default=0.001)
    sp.add_argument("--metrics", nargs="+", default=None, metavar="SPEC",
                    help="e.g. 'R@1,IoU=0.5' 'R@5,mIoU'")
    sp.add_argument("--threshold-mode", default="strict", choices=("strict", "inclusive"))
    common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("eval", help="score a predictions file against ground truth")
    sp.add_argument("input")
    sp.add_argument("predictions")
    sp.add_argument("--n", type=int, nargs="+", default=[1, 5])
    sp.add_argument("--m", type=float, nargs="+", default=[0.3, 0.5, 0.7])
    sp.add_argument("--threshold-mode", default="strict", choices=("strict", "inclusive"))
    sp.add_argument("--output", "-o", default=None, help="optional CSV report path")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("verify", help="check closed-form solutions against the grid oracle")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1000)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("correlate", help="Pearson correlation between two sweep CSVs")
    sp.add_argument("csv_a")
    sp.add_argument("csv_b")
    sp.add_argument("--columns", nargs="+", default=None)
    sp.add_argument("--output", "-o", default=None)
    sp.set_defaults(func=cmd_correlate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gbo {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"gbo {args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"gbo {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
