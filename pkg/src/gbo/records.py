"""JSON Lines sample records and per-sample optimization.

One input line holds one video/query sample::

    {"id": "v1#0", "duration_sec": 30.0,
     "proposals": [{"kind": "gauss", "center": 0.4, "width": 0.9, "loss": 0.12},
                   {"kind": "gauss", "components": [{"center": 0.3, "width": 0.2},
                                                    {"center": 0.6, "width": 0.2}]}],
     "ground_truth": {"start_sec": 9.0, "end_sec": 15.5}}

Proposal centers/widths are on the normalized [0, 1] timeline; ground truth and
predictions are in seconds.
"""
from __future__ import annotations

import json
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path

from .mixture import MixtureProposal, solve_mixture
from .proposals import DEFAULT_SCALES, KernelKind, ProposalKernel, ScaleConstants
from .selection import RankedPredictions, Strategy, rank
from .solver import Segment, clip, levelset_segment


class DataError(ValueError):
    """Malformed or inconsistent input data."""


@dataclass(frozen=True)
class SampleRecord:
    id: str
    duration_sec: float
    proposals: tuple[ProposalKernel | MixtureProposal, ...]
    ground_truth: Segment | None = None


def _number(obj: dict, key: str, where: str, required: bool = True) -> float | None:
    if key not in obj or obj[key] is None:
        if required:
            raise DataError(f"{where}: missing field {key!r}")
        return None
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise DataError(f"{where}: field {key!r} must be a finite number, got {v!r}")
    return float(v)


def parse_proposal(obj: dict, where: str, scales: ScaleConstants = DEFAULT_SCALES):
    if not isinstance(obj, dict):
        raise DataError(f"{where}: proposal must be an object")
    kind_name = obj.get("kind", "gauss")
    try:
        kind = KernelKind.parse(kind_name)
    except ValueError:
        raise DataError(f"{where}: unknown kernel kind {kind_name!r}") from None
    loss = _number(obj, "loss", where, required=False)
    try:
        if obj.get("components") is not None:
            if kind is not KernelKind.GAUSS:
                raise DataError(f"{where}: mixture components require kind 'gauss', got {kind.value!r}")
            comps = obj["components"]
            if not isinstance(comps, list):
                raise DataError(f"{where}: 'components' must be a list")
            pairs = [(_number(c, "center", f"{where}.components[{n}]"),
                      _number(c, "width", f"{where}.components[{n}]")) for n, c in enumerate(comps)]
            return MixtureProposal(tuple(pairs), loss=loss)
        return ProposalKernel(kind, _number(obj, "center", where), _number(obj, "width", where),
                              loss=loss, scales=scales)
    except DataError:
        raise
    except (ValueError, TypeError, AttributeError) as exc:
        raise DataError(f"{where}: {exc}") from None


def parse_sample(obj, where: str = "sample", scales: ScaleConstants = DEFAULT_SCALES) -> SampleRecord:
    if not isinstance(obj, dict):
        raise DataError(f"{where}: expected a JSON object")
    sid = obj.get("id")
    if not isinstance(sid, (str, int)) or isinstance(sid, bool):
        raise DataError(f"{where}: missing or invalid 'id'")
    sid = str(sid)
    duration = _number(obj, "duration_sec", where)
    if not duration > 0:
        raise DataError(f"{where}: duration_sec must be positive, got {duration}")
    props = obj.get("proposals")
    if not isinstance(props, list) or not props:
        raise DataError(f"{where}: 'proposals' must be a non-empty list")
    proposals = tuple(parse_proposal(p, f"{where}.proposals[{n}]", scales) for n, p in enumerate(props))
    gt = None
    if obj.get("ground_truth") is not None:
        g = obj["ground_truth"]
        if not isinstance(g, dict):
            raise DataError(f"{where}: 'ground_truth' must be an object")
        s = _number(g, "start_sec", f"{where}.ground_truth")
        e = _number(g, "end_sec", f"{where}.ground_truth")
        if not 0.0 <= s <= e <= duration:
            raise DataError(f"{where}: ground truth [{s}, {e}] outside [0, {duration}] or reversed")
        gt = Segment(s, e)
    return SampleRecord(sid, duration, proposals, gt)


def iter_jsonl(path: str | Path) -> Iterator[tuple[int, object]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: malformed JSON ({exc.msg})") from None


def read_samples(path: str | Path, scales: ScaleConstants = DEFAULT_SCALES) -> list[SampleRecord]:
    samples = [parse_sample(obj, f"{path}:{lineno}", scales) for lineno, obj in iter_jsonl(path)]
    seen = set()
    for s in samples:
        if s.id in seen:
            raise DataError(f"{path}: duplicate sample id {s.id!r}")
        seen.add(s.id)
    return samples


def dumps(obj) -> str:
    """Canonical one-line JSON; floats use Python's shortest round-trip repr."""
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), allow_nan=False)


def write_jsonl(path: str | Path, rows: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(dumps(row) + "\n")


def optimize_proposal(p, lam: float, convention: str = "raw") -> Segment:
    """Optimal segment on the normalized timeline, clipped to [0, 1]."""
    if isinstance(p, MixtureProposal):
        return solve_mixture(p, lam, convention).segment
    return clip(levelset_segment(p, lam))


def optimize_sample(sample: SampleRecord, lam: float, strategy=Strategy.ONLY_IOU,
                    convention: str = "raw") -> RankedPredictions:
    dur = sample.duration_sec
    # clip in normalized time, then map to seconds and clamp against rounding
    scored = [(clip(optimize_proposal(p, lam, convention).scaled(dur), 0.0, dur), p.loss)
              for p in sample.proposals]
    try:
        return rank(scored, strategy)
    except ValueError as exc:
        raise DataError(f"sample {sample.id!r}: {exc}") from None


def prediction_row(sample_id: str, ranked: RankedPredictions) -> dict:
    return {
        "id": sample_id,
        "segments": [{"start_sec": float(seg.s), "end_sec": float(seg.e), "score": float(score)}
                     for seg, score in ranked.items],
    }


def read_predictions(path: str | Path) -> dict[str, list[Segment]]:
    """Map sample id to its ranked predicted segments (seconds)."""
    out: dict[str, list[Segment]] = {}
    for lineno, obj in iter_jsonl(path):
        where = f"{path}:{lineno}"
        if not isinstance(obj, dict) or "id" not in obj:
            raise DataError(f"{where}: prediction needs an 'id'")
        segs = obj.get("segments")
        if not isinstance(segs, list) or not segs:
            raise DataError(f"{where}: 'segments' must be a non-empty list")
        try:
            parsed = [Segment(_number(s, "start_sec", where), _number(s, "end_sec", where)) for s in segs]
        except (ValueError, TypeError, AttributeError) as exc:
            raise DataError(f"{where}: {exc}") from None
        sid = str(obj["id"])
        if sid in out:
            raise DataError(f"{where}: duplicate prediction id {sid!r}")
        out[sid] = parsed
    if not out:
        raise DataError(f"{path}: no predictions")
    return out
