"""Write a synthetic proposal dump as JSON Lines.

    python scripts/make_fixture.py out.jsonl --samples 500 --kinds gauss laplace --mixture 0.3
"""
import argparse

from gbo.records import write_jsonl
from gbo.synthetic import make_samples

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("output")
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--proposals", type=int, default=5)
    ap.add_argument("--kinds", nargs="+", default=["gauss"])
    ap.add_argument("--mixture", type=float, default=0.0, help="fraction of gauss proposals made mixtures")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    write_jsonl(a.output, make_samples(a.samples, a.seed, a.proposals, a.kinds, a.mixture))
