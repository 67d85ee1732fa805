"""Top-k selection among a sample's optimized proposals."""
from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

from .metrics import tiou
from .solver import Segment


class Strategy(str, enum.Enum):
    ONLY_LOSS = "only_loss"
    ONLY_IOU = "only_iou"
    IOU_LOSS_SUM = "iou_loss_sum"
    IOU_LOSS_MAX = "iou_loss_max"

    @classmethod
    def parse(cls, name) -> Strategy:
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown selection strategy {name!r}; choose from {choices}") from None

    @property
    def uses_loss(self) -> bool:
        return self is not Strategy.ONLY_IOU


@dataclass(frozen=True)
class RankedPredictions:
    items: tuple[tuple[Segment, float], ...]
    order: tuple[int, ...]
    strategy: Strategy

    def top(self, k: int) -> list[Segment]:
        return [seg for seg, _ in self.items[:k]]


def pairwise_iou_scores(segments: Sequence[Segment]) -> list[float]:
    """Mean tIoU of each segment against all the others (1.0 for a lone segment)."""
    n = len(segments)
    if n == 0:
        raise ValueError("need at least one segment")
    if n == 1:
        return [1.0]
    sums = [0.0] * n
    for i in range(n):
        for j in range(i + 1, n):
            v = tiou(segments[i], segments[j])
            sums[i] += v
            sums[j] += v
    return [s / (n - 1) for s in sums]


def _loss_weights(losses: Sequence[float], norm: float) -> list[float]:
    if norm == 0.0:
        return [1.0] * len(losses)
    return [1.0 - v / norm for v in losses]


def rank(proposals: Sequence[tuple[Segment, float | None]], strategy=Strategy.ONLY_IOU) -> RankedPredictions:
    """Order proposals best-first; ties keep input order."""
    strategy = Strategy.parse(strategy)
    if not proposals:
        raise ValueError("nothing to rank")
    segments = [seg for seg, _ in proposals]
    losses = [loss for _, loss in proposals]
    if strategy.uses_loss:
        for i, loss in enumerate(losses):
            if loss is None:
                raise ValueError(f"proposal {i} has no loss but strategy {strategy.value} needs one")

    if strategy is Strategy.ONLY_LOSS:
        scores = [-v for v in losses]
        tiebreak = [0.0] * len(segments)
    else:
        tiebreak = pairwise_iou_scores(segments)
        scores = tiebreak
        if strategy is Strategy.IOU_LOSS_SUM:
            scores = [s * w for s, w in zip(tiebreak, _loss_weights(losses, sum(losses)))]
        elif strategy is Strategy.IOU_LOSS_MAX:
            scores = [s * w for s, w in zip(tiebreak, _loss_weights(losses, max(losses)))]

    # weighted ties (e.g. every weight zero under equal losses with max-normalization)
    # fall back to the plain IoU vote, then to input order
    order = sorted(range(len(segments)), key=lambda i: (-scores[i], -tiebreak[i], i))
    return RankedPredictions(tuple((segments[i], scores[i]) for i in order), tuple(order), strategy)
