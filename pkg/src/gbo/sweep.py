"""Penalty-weight sweeps and sweep-curve correlation."""
from __future__ import annotations

import csv
import math
import os
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path

from .metrics import DEFAULT_METRICS, MetricSpec, pearson
from .records import DataError, SampleRecord, optimize_sample
from .selection import Strategy

PRESETS = {
    "charades_cnm": 0.919,
    "charades_cpl": 0.886,
    "charades_pps": 0.883,
    "anet_cnm": 0.938,
    "anet_cpl": 0.909,
    "anet_pps": 0.904,
}


@dataclass(frozen=True)
class SweepConfig:
    lambda_min: float = 0.001
    lambda_max: float = 1.0
    lambda_step: float = 0.001
    metrics: tuple[MetricSpec, ...] = DEFAULT_METRICS
    strategy: Strategy = Strategy.ONLY_IOU
    convention: str = "raw"
    threshold_mode: str = "strict"
    max_rank: int = field(init=False)

    def __post_init__(self):
        if not 0.0 <= self.lambda_min <= self.lambda_max:
            raise ValueError(f"need 0 <= lambda_min <= lambda_max, got [{self.lambda_min}, {self.lambda_max}]")
        if not self.lambda_step > 0:
            raise ValueError(f"lambda_step must be positive, got {self.lambda_step}")
        if not self.metrics:
            raise ValueError("no metrics requested")
        object.__setattr__(self, "strategy", Strategy.parse(self.strategy))
        object.__setattr__(self, "metrics", tuple(self.metrics))
        object.__setattr__(self, "max_rank", max(m.n for m in self.metrics))

    @property
    def decimals(self) -> int:
        return max(3, math.ceil(-math.log10(self.lambda_step) - 1e-9))

    def lambdas(self) -> list[float]:
        n = math.floor((self.lambda_max - self.lambda_min) / self.lambda_step + 1e-9) + 1
        return [round(self.lambda_min + i * self.lambda_step, 12) for i in range(n)]


def available_cores() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # not on Linux
        return os.cpu_count() or 1


def ordered_map(fn: Callable, items: Sequence, workers: int | None = None) -> list:
    """``map`` over a process pool; results come back in input order."""
    items = list(items)
    workers = workers or available_cores()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def sweep_row(lam: float, samples: Sequence[SampleRecord], config: SweepConfig) -> dict[str, float]:
    scored = []
    for s in samples:
        ranked = optimize_sample(s, lam, config.strategy, config.convention)
        scored.append((ranked.top(config.max_rank), s.ground_truth))
    return {m.name: m.compute(scored, config.threshold_mode) for m in config.metrics}


def run_sweep(samples: Sequence[SampleRecord], config: SweepConfig = SweepConfig(),
              workers: int | None = 1) -> list[tuple[float, dict[str, float]]]:
    missing = [s.id for s in samples if s.ground_truth is None]
    if missing:
        raise DataError(f"samples without ground truth: {', '.join(missing)}")
    if not samples:
        raise DataError("no samples to sweep")
    lams = config.lambdas()
    rows = ordered_map(partial(sweep_row, samples=tuple(samples), config=config), lams, workers)
    return list(zip(lams, rows))


def best_lambdas(rows: Sequence[tuple[float, dict[str, float]]]) -> dict[str, tuple[float, float]]:
    """Per metric, the first lambda attaining the maximum and that maximum."""
    best: dict[str, tuple[float, float]] = {}
    for lam, vals in rows:
        for k, v in vals.items():
            if k not in best or v > best[k][1]:
                best[k] = (lam, v)
    return best


def format_value(v: float) -> str:
    return format(v, ".6g")


def write_sweep_csv(path_or_file, rows, config: SweepConfig) -> None:
    names = [m.name for m in config.metrics]

    def _write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["lambda", *names])
        for lam, vals in rows:
            w.writerow([f"{lam:.{config.decimals}f}", *(format_value(vals[n]) for n in names)])

    if hasattr(path_or_file, "write"):
        _write(path_or_file)
    else:
        with open(path_or_file, "w", encoding="utf-8", newline="") as fh:
            _write(fh)


def read_sweep_csv(path: str | Path) -> tuple[list[str], dict[str, list[float]]]:
    """Return (lambda strings, column name -> values)."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty CSV") from None
        if not header or header[0] != "lambda":
            raise DataError(f"{path}: first column must be 'lambda'")
        lams: list[str] = []
        cols: dict[str, list[float]] = {h: [] for h in header[1:]}
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            try:
                float(row[0])
                vals = [float(x) for x in row[1:]]
            except ValueError:
                raise DataError(f"{path}:{lineno}: non-numeric value") from None
            lams.append(row[0])
            for h, v in zip(header[1:], vals):
                cols[h].append(v)
    return lams, cols


def correlate(path_a, path_b, columns: Iterable[str] | None = None) -> dict[str, float]:
    lams_a, cols_a = read_sweep_csv(path_a)
    lams_b, cols_b = read_sweep_csv(path_b)
    for k, (x, y) in enumerate(zip(lams_a, lams_b)):
        if float(x) != float(y):
            raise DataError(f"lambda grids differ at row {k + 1}: {x} vs {y}")
    if len(lams_a) != len(lams_b):
        k = min(len(lams_a), len(lams_b))
        first = max(lams_a, lams_b, key=len)[k]
        raise DataError(f"lambda grids differ in length ({len(lams_a)} vs {len(lams_b)}); "
                        f"first unmatched lambda {first}")
    shared = [c for c in cols_a if c in cols_b]
    if columns is not None:
        columns = list(columns)
        absent = [c for c in columns if c not in shared]
        if absent:
            raise DataError(f"columns missing from one of the CSVs: {', '.join(absent)}")
        shared = columns
    if not shared:
        raise DataError("no shared metric columns")
    out = {}
    for c in shared:
        try:
            out[c] = pearson(cols_a[c], cols_b[c])
        except ValueError as exc:
            raise DataError(f"column {c!r}: {exc}") from None
    return out
