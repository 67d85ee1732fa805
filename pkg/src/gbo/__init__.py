"""Coverage-versus-length boundary optimization for parametric temporal proposals."""

from .metrics import EvalReport, MetricSpec, mean_iou_at, pearson, recall_at, tiou
from .mixture import MixtureProposal, component_bounds, effective_params, solve_mixture
from .numerics import adaptive_simpson, erf
from .oracle import oracle_maximize
from .proposals import DEFAULT_SCALES, KernelKind, ProposalKernel, ScaleConstants, effective_scale, evaluate
from .selection import RankedPredictions, Strategy, pairwise_iou_scores, rank
from .solver import (GboSolution, Segment, clip, coverage_gaussian, objective, optimal_objective_gaussian,
                     solve_gaussian, solve_levelset)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SCALES", "EvalReport", "GboSolution", "KernelKind", "MetricSpec", "MixtureProposal",
    "ProposalKernel", "RankedPredictions", "ScaleConstants", "Segment", "Strategy", "adaptive_simpson",
    "clip", "component_bounds", "coverage_gaussian", "effective_params", "effective_scale", "erf",
    "evaluate", "mean_iou_at", "objective", "optimal_objective_gaussian", "oracle_maximize",
    "pairwise_iou_scores", "pearson", "rank", "recall_at", "solve_gaussian", "solve_levelset",
    "solve_mixture", "tiou",
]
