"""Temporal IoU, recall at rank n, mean IoU and curve correlation."""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .solver import Segment

THRESHOLD_MODES = ("strict", "inclusive")


def tiou(a: Segment, b: Segment) -> float:
    inter = min(a.e, b.e) - max(a.s, b.s)
    union = max(a.e, b.e) - min(a.s, b.s)
    if union <= 0.0:
        # both degenerate at the same point
        return 1.0 if (a.s == b.s and a.e == b.e) else 0.0
    return max(inter, 0.0) / union


def best_ious(samples: Sequence[tuple[Sequence[Segment], Segment]], n: int) -> list[float]:
    """Per-sample max tIoU over the first ``n`` predictions (or all, if fewer)."""
    if not samples:
        raise ValueError("no samples to evaluate")
    if n < 1:
        raise ValueError(f"rank depth n must be >= 1, got {n}")
    out = []
    for k, (preds, gt) in enumerate(samples):
        if not preds:
            raise ValueError(f"sample {k} has no predictions")
        out.append(max(tiou(p, gt) for p in preds[:n]))
    return out


def recall_at(samples, n: int, m: float, mode: str = "strict") -> float:
    """Percentage of samples whose best top-n tIoU exceeds ``m``."""
    if not 0.0 < m < 1.0:
        raise ValueError(f"IoU threshold must lie in (0, 1), got {m}")
    if mode not in THRESHOLD_MODES:
        raise ValueError(f"threshold mode must be one of {THRESHOLD_MODES}, got {mode!r}")
    best = best_ious(samples, n)
    hits = sum(1 for v in best if (v > m if mode == "strict" else v >= m))
    return 100.0 * hits / len(best)


def mean_iou_at(samples, n: int) -> float:
    best = best_ious(samples, n)
    # fsum is correctly rounded, so the result does not depend on sample order
    return 100.0 * math.fsum(best) / len(best)


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"pearson needs two equal-length 1-d sequences, got {x.shape} and {y.shape}")
    if len(x) < 2:
        raise ValueError("pearson needs at least two points")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("pearson undefined: zero variance")
    # sqrt of the product keeps r == 1.0 exactly when x is y
    r = float(np.dot(dx, dy)) / float(np.sqrt(sxx * syy))
    return min(1.0, max(-1.0, r))


@dataclass(frozen=True)
class MetricSpec:
    """``R@n,IoU=m`` when ``threshold`` is set, else ``R@n,mIoU``."""

    n: int
    threshold: float | None = None

    @classmethod
    def parse(cls, text: str) -> MetricSpec:
        t = text.strip().replace(" ", "")
        try:
            head, tail = t.split(",", 1)
            if not head.startswith("R@"):
                raise ValueError
            n = int(head[2:])
            if tail == "mIoU":
                return cls(n)
            if not tail.startswith("IoU="):
                raise ValueError
            return cls(n, float(tail[4:]))
        except ValueError:
            raise ValueError(f"bad metric spec {text!r}; expected e.g. 'R@1,IoU=0.5' or 'R@5,mIoU'") from None

    @property
    def name(self) -> str:
        if self.threshold is None:
            return f"R@{self.n},mIoU"
        return f"R@{self.n},IoU={self.threshold:g}"

    def compute(self, samples, mode: str = "strict") -> float:
        if self.threshold is None:
            return mean_iou_at(samples, self.n)
        return recall_at(samples, self.n, self.threshold, mode)


DEFAULT_METRICS = tuple(MetricSpec.parse(s) for s in (
    "R@1,IoU=0.5", "R@1,IoU=0.7", "R@1,mIoU",
    "R@5,IoU=0.5", "R@5,IoU=0.7", "R@5,mIoU",
))


@dataclass
class EvalReport:
    values: dict[str, float] = field(default_factory=dict)
    sample_count: int = 0

    def table(self) -> str:
        width = max([len(k) for k in self.values] + [6])
        lines = [f"{'metric':<{width}}  value", f"{'-' * width}  -------"]
        lines += [f"{k:<{width}}  {v:7.2f}" for k, v in self.values.items()]
        lines.append(f"samples: {self.sample_count}")
        return "\n".join(lines)


def evaluate_report(samples, metrics: Sequence[MetricSpec] = DEFAULT_METRICS,
                    mode: str = "strict") -> EvalReport:
    return EvalReport({m.name: m.compute(samples, mode) for m in metrics}, len(samples))
