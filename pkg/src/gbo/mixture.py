"""Reduction of Gaussian-mixture proposals to a single effective Gaussian."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .proposals import DEFAULT_SCALES, ScaleConstants
from .solver import GboSolution, Segment, clip, gaussian_area, solve_gaussian

CONVENTIONS = ("raw", "divided")


@dataclass(frozen=True)
class MixtureProposal:
    components: tuple[tuple[float, float], ...]
    loss: float | None = None

    def __post_init__(self):
        comps = tuple((float(c), float(w)) for c, w in self.components)
        if not comps:
            raise ValueError("mixture needs at least one component")
        for n, (c, w) in enumerate(comps):
            if not 0.0 <= c <= 1.0:
                raise ValueError(f"component {n}: center must lie in [0, 1], got {c}")
            if not (w > 0 and math.isfinite(w)):
                raise ValueError(f"component {n}: width must be positive, got {w}")
        object.__setattr__(self, "components", comps)
        if self.loss is not None and not self.loss >= 0:
            raise ValueError(f"loss must be nonnegative, got {self.loss}")


def component_bounds(m: MixtureProposal) -> list[tuple[float, float]]:
    return [(c - w / 2, c + w / 2) for c, w in m.components]


def effective_params(m: MixtureProposal) -> tuple[float, float]:
    """Center and width of the span from the earliest start to the latest end."""
    bounds = component_bounds(m)
    i = min(range(len(bounds)), key=lambda n: (bounds[n][0], n))
    j = max(range(len(bounds)), key=lambda n: (bounds[n][1], -n))
    s, e = bounds[i][0], bounds[j][1]
    if m.components[i] == m.components[j]:
        # the span is one component; return it untouched so N = 1 is an exact identity
        return m.components[i]
    return (s + e) / 2, e - s


def solve_mixture(m: MixtureProposal, lam: float, convention: str = "raw",
                  scales: ScaleConstants = DEFAULT_SCALES) -> GboSolution:
    """Gaussian closed form at the effective center/width, clipped to [0, 1].

    ``convention="raw"`` uses the effective width as the standard deviation;
    ``"divided"`` first divides it by the Gaussian scale constant.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    c, w = effective_params(m)
    if convention == "divided":
        w = w / scales.sigma_gauss
    sol = solve_gaussian(c, w, lam)
    seg = clip(sol.segment)
    if seg == sol.segment:
        return sol
    return GboSolution(seg, _clipped_objective(c, w, lam, seg))


def _clipped_objective(c: float, w: float, lam: float, seg: Segment) -> float:
    if seg.degenerate:
        return 0.0
    return gaussian_area(c, w, seg.s, seg.e) - lam * seg.length
