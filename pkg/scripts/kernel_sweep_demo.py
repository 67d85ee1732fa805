"""Sweep lambda on synthetic dumps for each kernel kind and correlate the curves.

Writes one CSV per kind into OUTDIR plus a correlation table against the Gaussian curve.
"""
import argparse
from pathlib import Path

from gbo.proposals import KernelKind
from gbo.records import parse_sample
from gbo.sweep import SweepConfig, best_lambdas, correlate, run_sweep, write_sweep_csv
from gbo.synthetic import make_samples

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir")
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--step", type=float, default=0.01)
    ap.add_argument("--workers", type=int, default=None)
    a = ap.parse_args()
    out = Path(a.outdir)
    out.mkdir(parents=True, exist_ok=True)
    cfg = SweepConfig(lambda_min=a.step, lambda_max=1.0, lambda_step=a.step)
    for kind in KernelKind:
        samples = [parse_sample(s) for s in make_samples(a.samples, seed=7, kinds=[kind.value])]
        rows = run_sweep(samples, cfg, a.workers)
        write_sweep_csv(out / f"{kind.value}.csv", rows, cfg)
        best = best_lambdas(rows)["R@1,IoU=0.5"]
        print(f"{kind.value:20s} best R@1,IoU=0.5 = {best[1]:6.2f} at lambda {best[0]:.3f}")
    for kind in KernelKind:
        r = correlate(out / "gauss.csv", out / f"{kind.value}.csv")
        print(kind.value, {k: round(v, 3) for k, v in r.items()})
