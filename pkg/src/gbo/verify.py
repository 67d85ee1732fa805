"""Randomized agreement check between the closed-form solvers and the grid oracle."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .oracle import oracle_maximize
from .proposals import KernelKind, ProposalKernel, evaluate
from .solver import solve_levelset

ENDPOINT_TOL = 2e-4
OBJECTIVE_TOL = 1e-6
STATIONARY_TOL = 1e-10
GRID_STEP = 1e-4
# wide enough for the heaviest tails at scale 0.3 and lambda 0.05 (|d| < 1.35)
ORACLE_SPAN = (-2.0, 3.0)


@dataclass
class VerifyReport:
    trials: int = 0
    max_endpoint_err: float = 0.0
    max_objective_err: float = 0.0
    max_stationary_err: float = 0.0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.ok else f"FAIL ({len(self.failures)} violations)"
        return "\n".join([
            f"trials               {self.trials}",
            f"max endpoint error   {self.max_endpoint_err:.3e}  (tol {ENDPOINT_TOL:g})",
            f"max objective error  {self.max_objective_err:.3e}  (tol {OBJECTIVE_TOL:g})",
            f"max |f(bound) - lam| {self.max_stationary_err:.3e}  (tol {STATIONARY_TOL:g})",
            status,
        ])


def random_trials(seed: int, trials: int):
    rng = np.random.default_rng(seed)
    kinds = list(KernelKind)
    for _ in range(trials):
        kind = kinds[int(rng.integers(len(kinds)))]
        c, a, lam = rng.uniform(0.1, 0.9), rng.uniform(0.02, 0.3), rng.uniform(0.05, 0.99)
        yield ProposalKernel.from_scale(kind, float(c), float(a)), float(lam)


def check_trial(kernel: ProposalKernel, lam: float, grid_step: float = GRID_STEP) -> dict:
    sol = solve_levelset(kernel, lam)
    ref = oracle_maximize(kernel, lam, grid_step, span=ORACLE_SPAN)
    return {
        "kind": kernel.kind.value, "center": kernel.center, "width": kernel.width, "lambda": lam,
        "segment": (sol.segment.s, sol.segment.e),
        "oracle_segment": (ref.segment.s, ref.segment.e),
        "endpoint_err": max(abs(sol.segment.s - ref.segment.s), abs(sol.segment.e - ref.segment.e)),
        "objective_err": abs(sol.objective - ref.objective),
        "stationary_err": max(abs(evaluate(kernel, sol.segment.s) - lam),
                              abs(evaluate(kernel, sol.segment.e) - lam)),
    }


def run_verification(seed: int = 0, trials: int = 1000, grid_step: float = GRID_STEP) -> VerifyReport:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rep = VerifyReport()
    for kernel, lam in random_trials(seed, trials):
        r = check_trial(kernel, lam, grid_step)
        rep.trials += 1
        rep.max_endpoint_err = max(rep.max_endpoint_err, r["endpoint_err"])
        rep.max_objective_err = max(rep.max_objective_err, r["objective_err"])
        rep.max_stationary_err = max(rep.max_stationary_err, r["stationary_err"])
        if (r["endpoint_err"] > ENDPOINT_TOL or r["objective_err"] > OBJECTIVE_TOL
                or r["stationary_err"] > STATIONARY_TOL):
            rep.failures.append(r)
    return rep
