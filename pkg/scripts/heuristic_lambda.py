"""Show the penalty weight at which the optimal Gaussian segment equals [c - w/2, c + w/2]."""
import math

from gbo.solver import solve_gaussian
from gbo.sweep import PRESETS

if __name__ == "__main__":
    lam = math.exp(-1 / 8)
    sol = solve_gaussian(0.5, 0.1, lam)
    print(f"lambda = exp(-1/8) = {lam:.6f}; segment = [{sol.segment.s:.12f}, {sol.segment.e:.12f}]")
    for name, v in sorted(PRESETS.items()):
        print(f"  preset {name:14s} {v:.3f}  (diff {v - lam:+.4f})")
