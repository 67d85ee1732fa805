import csv
import io

import pytest

from gbo.metrics import MetricSpec
from gbo.records import DataError, parse_sample
from gbo.sweep import PRESETS, SweepConfig, best_lambdas, correlate, ordered_map, run_sweep, write_sweep_csv
from gbo.synthetic import make_samples


@pytest.fixture(scope="module")
def samples():
    return [parse_sample(s) for s in make_samples(12, seed=3, kinds=["gauss", "laplace"], mixture_fraction=0.3)]


def test_default_grid():
    lams = SweepConfig().lambdas()
    assert len(lams) == 1000
    assert lams[0] == 0.001 and lams[-1] == 1.0
    assert all(b > a for a, b in zip(lams, lams[1:]))


def test_custom_grid_and_validation():
    assert SweepConfig(0.0, 1.0, 0.25).lambdas() == [0.0, 0.25, 0.5, 0.75, 1.0]
    with pytest.raises(ValueError):
        SweepConfig(0.5, 0.1)
    with pytest.raises(ValueError):
        SweepConfig(lambda_step=0.0)
    with pytest.raises(ValueError):
        SweepConfig(strategy="nope")


def test_presets_cover_fixed_weights():
    assert PRESETS == {"charades_cnm": 0.919, "charades_cpl": 0.886, "charades_pps": 0.883,
                       "anet_cnm": 0.938, "anet_cpl": 0.909, "anet_pps": 0.904}


def test_rows_ascend_and_stay_in_range(samples):
    cfg = SweepConfig(0.01, 1.0, 0.01)
    rows = run_sweep(samples, cfg)
    assert [lam for lam, _ in rows] == cfg.lambdas()
    for _, vals in rows:
        assert all(0.0 <= v <= 100.0 for v in vals.values())
        assert vals["R@1,IoU=0.7"] <= vals["R@1,IoU=0.5"]
        assert vals["R@5,IoU=0.7"] <= vals["R@5,IoU=0.5"]
        assert vals["R@1,IoU=0.5"] <= vals["R@5,IoU=0.5"]


def test_parallel_matches_serial(samples):
    cfg = SweepConfig(0.05, 1.0, 0.05)
    assert run_sweep(samples, cfg, workers=1) == run_sweep(samples, cfg, workers=3)


def test_missing_ground_truth_lists_ids(samples):
    raw = make_samples(2, seed=1)
    raw[1]["ground_truth"] = None
    bad = [parse_sample(r) for r in raw]
    with pytest.raises(DataError, match="synthetic-00001"):
        run_sweep(bad, SweepConfig(0.1, 0.2, 0.1))


def test_best_lambdas():
    rows = [(0.1, {"m": 1.0}), (0.2, {"m": 3.0}), (0.3, {"m": 3.0})]
    assert best_lambdas(rows) == {"m": (0.2, 3.0)}


def test_csv_format(samples):
    cfg = SweepConfig(0.5, 0.6, 0.05, metrics=(MetricSpec(1, 0.5), MetricSpec(1)))
    buf = io.StringIO()
    write_sweep_csv(buf, run_sweep(samples, cfg), cfg)
    text = buf.getvalue()
    assert "\r" not in text
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["lambda", "R@1,IoU=0.5", "R@1,mIoU"]
    assert [r[0] for r in rows[1:]] == ["0.500", "0.550", "0.600"]
    for r in rows[1:]:
        for v in r[1:]:
            digits = v.replace(".", "").lstrip("0")
            assert len(digits) <= 6


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


def test_correlate(tmp_path):
    a = write_csv(tmp_path / "a.csv", ["lambda", "x", "y"], [["0.1", 1, 5], ["0.2", 2, 4], ["0.3", 3, 4]])
    b = write_csv(tmp_path / "b.csv", ["lambda", "x", "z"], [["0.1", 1, 0], ["0.2", 2, 0], ["0.3", 4, 0]])
    assert correlate(a, a) == {"x": pytest.approx(1.0), "y": pytest.approx(1.0)}
    assert correlate(a, b) == {"x": pytest.approx(0.9819805060619657, abs=1e-12)}
    with pytest.raises(DataError, match="zero variance"):
        correlate(b, b, ["z"])
    with pytest.raises(DataError, match="missing"):
        correlate(a, b, ["y"])


def test_correlate_grid_mismatch(tmp_path):
    a = write_csv(tmp_path / "a.csv", ["lambda", "x"], [["0.1", 1], ["0.2", 2], ["0.3", 3]])
    b = write_csv(tmp_path / "b.csv", ["lambda", "x"], [["0.1", 1], ["0.25", 2], ["0.3", 3]])
    with pytest.raises(DataError, match="0.2 vs 0.25"):
        correlate(a, b)
    c = write_csv(tmp_path / "c.csv", ["lambda", "x"], [["0.1", 1], ["0.2", 2]])
    with pytest.raises(DataError, match="0.3"):
        correlate(a, c)


def _square(x):
    return x * x


def test_ordered_map_preserves_order():
    assert ordered_map(_square, range(50), workers=4) == [x * x for x in range(50)]
