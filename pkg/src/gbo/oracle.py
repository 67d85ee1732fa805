"""Brute-force grid maximizer used to cross-check the closed-form solvers."""
from __future__ import annotations

import numpy as np

from .proposals import ProposalKernel, evaluate
from .solver import GboSolution, Segment, check_lambda

DEFAULT_SPAN = (-1.0, 2.0)
DEFAULT_CELL_BUDGET = 20_000_000


def oracle_maximize(kernel: ProposalKernel, lam: float, grid_step: float,
                    span: tuple[float, float] = DEFAULT_SPAN,
                    cell_budget: int = DEFAULT_CELL_BUDGET) -> GboSolution:
    """Best grid pair (s, e), s <= e, for the trapezoid-rule objective.

    Every pair on the grid is considered: with cumulative net area F, the best
    pair ending at j starts at the running argmin of F over indices <= j, so the
    exhaustive search over pairs reduces to one pass. A zero-length pair at the
    grid point nearest the center wins whenever no pair has positive objective.
    """
    lam = check_lambda(lam)
    if not grid_step > 0:
        raise ValueError(f"grid_step must be positive, got {grid_step}")
    lo, hi = map(float, span)
    if not hi > lo:
        raise ValueError(f"empty oracle span {span}")
    n = int(round((hi - lo) / grid_step)) + 1
    if n > cell_budget:
        raise ValueError(f"grid of {n} points exceeds cell budget {cell_budget}")
    t = lo + grid_step * np.arange(n)
    g = evaluate(kernel, t) - lam
    area = np.concatenate(([0.0], np.cumsum(0.5 * grid_step * (g[1:] + g[:-1]))))

    run_min = np.minimum.accumulate(area)
    gain = area - run_min
    j = int(np.argmax(gain))
    best = float(gain[j])
    if best <= 0.0:
        k = int(np.argmin(np.abs(t - kernel.center)))
        return GboSolution(Segment(float(t[k]), float(t[k])), 0.0)
    # first index attaining the running minimum up to j
    i = int(np.argmax(area[: j + 1] == run_min[j]))
    return GboSolution(Segment(float(t[i]), float(t[j])), best)
