"""Boundary optimization: maximize coverage minus lambda times length.

For a symmetric unimodal proposal f the optimum of
``J(s, e) = integral_s^e f(t) dt - lam * (e - s)`` is the superlevel set
``{t : f(t) >= lam}``: an interval centered at the peak whose ends satisfy
``f(s) = f(e) = lam`` when ``0 < lam < 1``, and the point ``[c, c]`` when
``lam >= 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import adaptive_simpson, bisect_decreasing, erf
from .proposals import KernelKind, ProposalKernel, effective_scale, evaluate

QUAD_TOL = 1e-10
QUAD_DEPTH = 40
BISECT_TOL = 1e-12
BISECT_MAX_ITER = 200
BRACKET_SCALES = 60.0


@dataclass(frozen=True)
class Segment:
    s: float
    e: float

    def __post_init__(self):
        if not self.s <= self.e:
            raise ValueError(f"segment start {self.s} exceeds end {self.e}")

    @property
    def length(self) -> float:
        return self.e - self.s

    @property
    def degenerate(self) -> bool:
        return self.s == self.e

    def scaled(self, factor: float) -> Segment:
        return Segment(self.s * factor, self.e * factor)


@dataclass(frozen=True)
class GboSolution:
    segment: Segment
    objective: float

    @property
    def degenerate(self) -> bool:
        return self.segment.degenerate


def check_lambda(lam: float) -> float:
    lam = float(lam)
    if not lam >= 0 or math.isinf(lam):
        raise ValueError(f"penalty weight must be a finite value >= 0, got {lam}")
    return lam


def clip(seg: Segment, lo: float = 0.0, hi: float = 1.0) -> Segment:
    """Intersect with [lo, hi]; an empty intersection collapses onto the nearer bound."""
    if lo > hi:
        raise ValueError(f"clip bounds reversed: [{lo}, {hi}]")
    if seg.e < lo:
        return Segment(lo, lo)
    if seg.s > hi:
        return Segment(hi, hi)
    return Segment(max(seg.s, lo), min(seg.e, hi))


def _breakpoints(kernel: ProposalKernel, s: float, e: float) -> list[float]:
    # kinks of the kernel inside (s, e); Simpson converges slowly across them
    c = kernel.center
    pts = [c]
    if kernel.kind.compact:
        a = effective_scale(kernel)
        pts += [c - a, c + a]
    return sorted(p for p in pts if s < p < e)


def coverage(kernel: ProposalKernel, seg: Segment, tol: float = QUAD_TOL) -> float:
    """Area under the kernel over ``seg`` by adaptive Simpson."""
    if seg.degenerate:
        return 0.0
    f = lambda t: evaluate(kernel, t)  # noqa: E731
    knots = [seg.s, *_breakpoints(kernel, seg.s, seg.e), seg.e]
    pieces = len(knots) - 1
    return sum(adaptive_simpson(f, lo, hi, tol / pieces, QUAD_DEPTH)
               for lo, hi in zip(knots, knots[1:]))


def objective(kernel: ProposalKernel, seg: Segment, lam: float) -> float:
    lam = check_lambda(lam)
    if seg.degenerate:
        return 0.0
    return coverage(kernel, seg) - lam * seg.length


def coverage_gaussian(w_eff: float, lam: float) -> float:
    """Exact Gaussian area between the two points where the curve equals ``lam``."""
    _check_open_unit(lam)
    _check_width(w_eff)
    return math.sqrt(2 * math.pi) * w_eff * erf(math.sqrt(-math.log(lam)))


def optimal_objective_gaussian(w_eff: float, lam: float) -> float:
    cov = coverage_gaussian(w_eff, lam)
    return cov - lam * 2 * w_eff * math.sqrt(-2 * math.log(lam))


def _check_open_unit(lam: float) -> None:
    if not 0.0 < lam < 1.0:
        raise ValueError(f"penalty weight must lie in (0, 1), got {lam}")


def _check_width(w: float) -> None:
    if not (w > 0 and math.isfinite(w)):
        raise ValueError(f"width must be positive and finite, got {w}")


def gaussian_area(c: float, w: float, lo: float, hi: float) -> float:
    r = w * math.sqrt(2)
    return w * math.sqrt(math.pi / 2) * (erf((hi - c) / r) - erf((lo - c) / r))


def solve_gaussian(c: float, w_eff: float, lam: float) -> GboSolution:
    """Closed-form optimum for a Gaussian with standard deviation ``w_eff``.

    Boundaries are returned unclipped, except at ``lam == 0`` where the optimum
    is unbounded and the full unit timeline is returned instead.
    """
    _check_width(w_eff)
    lam = check_lambda(lam)
    if lam >= 1.0:
        return GboSolution(Segment(c, c), 0.0)
    if lam == 0.0:
        return GboSolution(Segment(0.0, 1.0), gaussian_area(c, w_eff, 0.0, 1.0))
    d = w_eff * math.sqrt(-2.0 * math.log(lam))
    seg = Segment(c - d, c + d)
    if seg.degenerate:
        return GboSolution(seg, 0.0)
    return GboSolution(seg, optimal_objective_gaussian(w_eff, lam))


def superlevel_halfwidth(kernel: ProposalKernel, lam: float) -> float:
    """Distance d from the center with ``f(c +- d) = lam`` for ``0 < lam < 1``."""
    _check_open_unit(lam)
    a = effective_scale(kernel)
    kind = kernel.kind
    if kind is KernelKind.GAUSS:
        return a * math.sqrt(-2.0 * math.log(lam))
    if kind is KernelKind.LAPLACE:
        return a * -math.log(lam)
    if kind is KernelKind.CAUCHY:
        return a * math.sqrt(1.0 / lam - 1.0)
    if kind is KernelKind.TRIANGULAR:
        return a * (1.0 - lam)
    if kind is KernelKind.EPANECHNIKOV:
        return a * math.sqrt(1.0 - lam)
    if kind is KernelKind.STUDENT_T:
        nu = kernel.scales.nu
        return a * math.sqrt(nu * (lam ** (-2.0 / (nu + 1)) - 1.0))
    if kind is KernelKind.RATIONAL_QUADRATIC:
        al = kernel.scales.alpha
        return a * math.sqrt(2 * al * (lam ** (-1.0 / al) - 1.0))
    if kind is KernelKind.LOGISTIC:
        return _bisect_halfwidth(kernel, lam)
    raise ValueError(f"unhandled kernel kind {kind}")  # pragma: no cover


def _bisect_halfwidth(kernel: ProposalKernel, lam: float) -> float:
    c = kernel.center
    hi = c + BRACKET_SCALES * effective_scale(kernel)
    g = lambda t: evaluate(kernel, t) - lam  # noqa: E731
    while g(hi) > 0:  # only for lam below f(c + 60 a), i.e. about 1e-26
        hi = c + 2 * (hi - c)
    return bisect_decreasing(g, c, hi, BISECT_TOL, BISECT_MAX_ITER) - c


def levelset_segment(kernel: ProposalKernel, lam: float) -> Segment:
    """Unclipped optimal segment for any kernel kind, without the objective value."""
    if not isinstance(kernel, ProposalKernel):
        raise TypeError(f"expected ProposalKernel, got {type(kernel).__name__}")
    lam = check_lambda(lam)
    c = kernel.center
    if lam >= 1.0:
        return Segment(c, c)
    if lam == 0.0:
        if kernel.kind.compact:
            a = effective_scale(kernel)
            return Segment(c - a, c + a)
        return Segment(0.0, 1.0)
    if kernel.kind is KernelKind.GAUSS:
        return solve_gaussian(c, effective_scale(kernel), lam).segment
    d = superlevel_halfwidth(kernel, lam)
    return Segment(c - d, c + d)


def solve_levelset(kernel: ProposalKernel, lam: float) -> GboSolution:
    """Optimal segment for any kernel kind via its superlevel set, unclipped."""
    seg = levelset_segment(kernel, lam)
    if kernel.kind is KernelKind.GAUSS:
        return solve_gaussian(kernel.center, effective_scale(kernel), lam)
    return GboSolution(seg, objective(kernel, seg, lam))
