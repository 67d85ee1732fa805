"""Synthetic proposal dumps for tests and smoke runs (no real model outputs)."""
from __future__ import annotations

import numpy as np

from .proposals import DEFAULT_SCALES, KernelKind


def make_samples(n: int, seed: int = 0, proposals_per_sample: int = 5,
                 kinds=("gauss",), mixture_fraction: float = 0.0) -> list[dict]:
    """JSON-ready sample dicts with noisy proposals scattered around a ground truth."""
    rng = np.random.default_rng(seed)
    kinds = [KernelKind.parse(k) for k in kinds]
    out = []
    for i in range(n):
        duration = float(np.round(rng.uniform(20.0, 180.0), 2))
        gs, ge = np.sort(rng.uniform(0.0, 1.0, size=2))
        ge = max(ge, gs + 0.02)
        ge = min(ge, 1.0)
        gt_c, gt_len = (gs + ge) / 2, ge - gs
        props = []
        for _ in range(proposals_per_sample):
            kind = kinds[int(rng.integers(len(kinds)))]
            c = float(np.clip(gt_c + rng.normal(0.0, 0.1), 0.0, 1.0))
            # width chosen so the proposal's effective scale is comparable to the GT length
            scale = max(gt_len * rng.uniform(0.3, 0.8), 0.01)
            p = {"kind": kind.value, "center": c,
                 "width": float(scale * DEFAULT_SCALES.sigma(kind)),
                 "loss": float(np.round(rng.uniform(0.05, 2.0), 4))}
            if kind is KernelKind.GAUSS and rng.uniform() < mixture_fraction:
                k = int(rng.integers(2, 4))
                comps = [{"center": float(np.clip(c + rng.normal(0.0, 0.05), 0.0, 1.0)),
                          "width": float(max(gt_len * rng.uniform(0.2, 0.6), 0.005))} for _ in range(k)]
                p = {"kind": "gauss", "components": comps, "loss": p["loss"]}
            props.append(p)
        out.append({
            "id": f"synthetic-{i:05d}",
            "duration_sec": duration,
            "proposals": props,
            "ground_truth": {"start_sec": float(gs * duration), "end_sec": float(ge * duration)},
        })
    return out
