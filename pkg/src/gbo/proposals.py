"""Parametric proposal kernels on the normalized timeline.

Every kernel is a symmetric unimodal curve with peak value 1 at its center.
Widths predicted upstream are mapped to an effective scale ``w / sigma`` with a
kind-specific constant taken from :class:`ScaleConstants`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np


class KernelKind(str, enum.Enum):
    GAUSS = "gauss"
    LAPLACE = "laplace"
    CAUCHY = "cauchy"
    TRIANGULAR = "triangular"
    EPANECHNIKOV = "epanechnikov"
    LOGISTIC = "logistic"
    STUDENT_T = "student_t"
    RATIONAL_QUADRATIC = "rational_quadratic"

    @classmethod
    def parse(cls, name: str | KernelKind) -> KernelKind:
        if isinstance(name, KernelKind):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise ValueError(f"unknown kernel kind {name!r}") from None

    @property
    def compact(self) -> bool:
        return self in (KernelKind.TRIANGULAR, KernelKind.EPANECHNIKOV)


@dataclass(frozen=True)
class ScaleConstants:
    """Width-to-scale constants, all derived from the Gaussian baseline."""

    sigma_gauss: float = 9.0

    def __post_init__(self):
        if not self.sigma_gauss > 0 or not math.isfinite(self.sigma_gauss):
            raise ValueError(f"sigma_gauss must be positive, got {self.sigma_gauss}")
        # degrees of freedom nu = sigma_gauss / 4 must exceed 2
        if not self.nu > 2:
            raise ValueError(
                f"sigma_gauss={self.sigma_gauss} gives nu={self.nu} <= 2; need sigma_gauss > 8"
            )

    @property
    def sigma_laplace(self) -> float:
        return self.sigma_gauss

    @property
    def sigma_cauchy(self) -> float:
        return self.sigma_gauss

    @property
    def sigma_tri(self) -> float:
        return self.sigma_gauss / 2

    @property
    def sigma_epa(self) -> float:
        return self.sigma_gauss / 2

    @property
    def sigma_log(self) -> float:
        return 3 * self.sigma_gauss / 2

    @property
    def nu(self) -> float:
        return self.sigma_gauss / 4

    @property
    def alpha(self) -> float:
        return self.sigma_gauss / 2

    @property
    def sigma_t(self) -> float:
        return 4 * math.sqrt(self.nu / (self.nu - 2))

    @property
    def sigma_rq(self) -> float:
        a = self.alpha
        return 8 * math.sqrt(2 * a * (2 ** (1 / a) - 1))

    def sigma(self, kind: KernelKind) -> float:
        return self._by_kind[kind]

    @cached_property
    def _by_kind(self) -> dict[KernelKind, float]:
        return {
            KernelKind.GAUSS: self.sigma_gauss,
            KernelKind.LAPLACE: self.sigma_laplace,
            KernelKind.CAUCHY: self.sigma_cauchy,
            KernelKind.TRIANGULAR: self.sigma_tri,
            KernelKind.EPANECHNIKOV: self.sigma_epa,
            KernelKind.LOGISTIC: self.sigma_log,
            KernelKind.STUDENT_T: self.sigma_t,
            KernelKind.RATIONAL_QUADRATIC: self.sigma_rq,
        }


DEFAULT_SCALES = ScaleConstants()


@dataclass(frozen=True)
class ProposalKernel:
    kind: KernelKind
    center: float
    width: float
    loss: float | None = None
    scales: ScaleConstants = field(default=DEFAULT_SCALES, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", KernelKind.parse(self.kind))
        if not (0.0 <= self.center <= 1.0):
            raise ValueError(f"center must lie in [0, 1], got {self.center}")
        if not (self.width > 0 and math.isfinite(self.width)):
            raise ValueError(f"width must be positive and finite, got {self.width}")
        if self.loss is not None and not self.loss >= 0:
            raise ValueError(f"loss must be nonnegative, got {self.loss}")

    @classmethod
    def from_scale(cls, kind, center: float, scale: float, *,
                   scales: ScaleConstants = DEFAULT_SCALES, loss: float | None = None) -> ProposalKernel:
        """Build a kernel whose effective scale ``width / sigma`` equals ``scale``."""
        kind = KernelKind.parse(kind)
        return cls(kind, center, scale * scales.sigma(kind), loss=loss, scales=scales)

    @property
    def scale(self) -> float:
        return effective_scale(self)

    def __call__(self, t):
        return evaluate(self, t)


def effective_scale(kernel: ProposalKernel) -> float:
    return kernel.width / kernel.scales.sigma(kernel.kind)


def support_halfwidth(kernel: ProposalKernel) -> float:
    """Half-width of the support; ``inf`` for kernels with unbounded support."""
    return effective_scale(kernel) if kernel.kind.compact else math.inf


def _evaluate_scalar(kind: KernelKind, u: float, scales: ScaleConstants) -> float:
    if kind is KernelKind.GAUSS:
        return math.exp(-0.5 * u * u)
    if kind is KernelKind.LAPLACE:
        return math.exp(-abs(u))
    if kind is KernelKind.CAUCHY:
        return 1.0 / (1.0 + u * u)
    if kind is KernelKind.TRIANGULAR:
        return max(1.0 - abs(u), 0.0)
    if kind is KernelKind.EPANECHNIKOV:
        return max(1.0 - u * u, 0.0)
    if kind is KernelKind.LOGISTIC:
        # 4 s(z) (1 - s(z)) with 1 - s(z) = s(-z); exp of -|z| avoids overflow
        e = math.exp(-abs(u))
        return 4.0 * e / ((1.0 + e) * (1.0 + e))
    if kind is KernelKind.STUDENT_T:
        nu = scales.nu
        return (1.0 + u * u / nu) ** (-(nu + 1) / 2)
    if kind is KernelKind.RATIONAL_QUADRATIC:
        al = scales.alpha
        return (1.0 + u * u / (2 * al)) ** (-al)
    raise ValueError(f"unhandled kernel kind {kind}")  # pragma: no cover


def evaluate(kernel: ProposalKernel, t):
    """Kernel value M(t). Accepts a scalar or an array of times."""
    a = effective_scale(kernel)
    if isinstance(t, (float, int)):
        u = (t - kernel.center) / a
        if math.isinf(u):
            return 0.0
        return _evaluate_scalar(kernel.kind, u, kernel.scales)
    x = np.asarray(t, dtype=float) - kernel.center
    u = x / a
    kind = kernel.kind
    with np.errstate(over="ignore"):
        if kind is KernelKind.GAUSS:
            out = np.exp(-0.5 * u * u)
        elif kind is KernelKind.LAPLACE:
            out = np.exp(-np.abs(u))
        elif kind is KernelKind.CAUCHY:
            out = 1.0 / (1.0 + u * u)
        elif kind is KernelKind.TRIANGULAR:
            out = np.maximum(1.0 - np.abs(u), 0.0)
        elif kind is KernelKind.EPANECHNIKOV:
            out = np.maximum(1.0 - u * u, 0.0)
        elif kind is KernelKind.LOGISTIC:
            e = np.exp(-np.abs(u))
            out = 4.0 * e / ((1.0 + e) * (1.0 + e))
        elif kind is KernelKind.STUDENT_T:
            nu = kernel.scales.nu
            out = (1.0 + u * u / nu) ** (-(nu + 1) / 2)
        elif kind is KernelKind.RATIONAL_QUADRATIC:
            al = kernel.scales.alpha
            out = (1.0 + u * u / (2 * al)) ** (-al)
        else:  # pragma: no cover
            raise ValueError(f"unhandled kernel kind {kind}")
    if out.ndim == 0:
        return float(out)
    return out
