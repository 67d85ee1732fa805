import csv
import json
import subprocess
import sys

import pytest

from gbo.cli import main
from gbo.records import dumps
from gbo.solver import clip, solve_gaussian
from gbo.synthetic import make_samples


def one_gauss(center=0.5, width=0.9, **extra):
    rec = {"id": "s0", "duration_sec": 20.0,
           "proposals": [{"kind": "gauss", "center": center, "width": width}],
           "ground_truth": {"start_sec": 8.0, "end_sec": 12.0}}
    rec.update(extra)
    return rec


def read_lines(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


def test_optimize_single_gauss(write_jsonl, tmp_path):
    inp = write_jsonl([one_gauss()])
    out = tmp_path / "out.jsonl"
    assert main(["optimize", str(inp), "--lambda", "0.883", "-o", str(out), "--workers", "1"]) == 0
    [row] = read_lines(out)
    want = clip(solve_gaussian(0.5, 0.1, 0.883).segment).scaled(20.0)
    seg = row["segments"][0]
    assert row["id"] == "s0"
    assert seg["start_sec"] == pytest.approx(want.s, abs=1e-12)
    assert seg["end_sec"] == pytest.approx(want.e, abs=1e-12)


def test_preset_equals_lambda(write_jsonl, tmp_path):
    inp = write_jsonl(make_samples(5, seed=2))
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["optimize", str(inp), "--preset", "charades_pps", "-o", str(a), "--workers", "1"]) == 0
    assert main(["optimize", str(inp), "--lambda", "0.883", "-o", str(b), "--workers", "1"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_lambda_one_all_degenerate(write_jsonl, tmp_path):
    inp = write_jsonl(make_samples(10, seed=4, kinds=["gauss", "cauchy", "triangular"], mixture_fraction=0.5))
    out = tmp_path / "out.jsonl"
    assert main(["optimize", str(inp), "--lambda", "1.0", "-o", str(out), "--workers", "1"]) == 0
    for row in read_lines(out):
        for seg in row["segments"]:
            assert seg["start_sec"] == seg["end_sec"]


def test_mixture_record(write_jsonl, tmp_path):
    rec = one_gauss()
    rec["proposals"] = [{"kind": "gauss", "components": [{"center": 0.3, "width": 0.2},
                                                         {"center": 0.6, "width": 0.2}]}]
    out = tmp_path / "out.jsonl"
    assert main(["optimize", str(write_jsonl([rec])), "--lambda", "1", "-o", str(out)]) == 0
    [row] = read_lines(out)
    assert len(row["segments"]) == 1
    assert row["segments"][0]["start_sec"] == pytest.approx(0.45 * 20.0)


def test_output_roundtrip_is_canonical(write_jsonl, tmp_path):
    inp = write_jsonl(make_samples(20, seed=9, kinds=["gauss", "logistic"], mixture_fraction=0.2))
    out = tmp_path / "out.jsonl"
    assert main(["optimize", str(inp), "--lambda", "0.9", "--select", "iou_loss_sum", "-o", str(out)]) == 0
    for line in out.read_text().splitlines():
        assert dumps(json.loads(line)) == line


@pytest.mark.parametrize("argv", [
    ["optimize", "IN"],
    ["optimize", "IN", "--lambda", "-0.5"],
    ["optimize", "IN", "--lambda", "0.5", "--preset", "anet_pps"],
    ["optimize", "IN", "--select", "best"],
    ["verify", "--trials", "0"],
    ["bogus"],
])
def test_usage_errors_exit_1(argv, write_jsonl):
    inp = str(write_jsonl([one_gauss()]))
    argv = [inp if a == "IN" else a for a in argv]
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 1


def test_malformed_line_reports_line_number(tmp_path, capsys):
    p = tmp_path / "bad.jsonl"
    p.write_text(json.dumps(one_gauss()) + "\n\n{oops\n")
    assert main(["optimize", str(p), "--lambda", "0.5"]) == 2
    assert "bad.jsonl:3" in capsys.readouterr().err


def test_unknown_kind_is_data_error(write_jsonl, capsys):
    rec = one_gauss()
    rec["proposals"][0]["kind"] = "hat"
    assert main(["optimize", str(write_jsonl([rec])), "--lambda", "0.5"]) == 2
    assert "'hat'" in capsys.readouterr().err


def test_missing_loss_under_loss_strategy(write_jsonl, capsys):
    assert main(["optimize", str(write_jsonl([one_gauss()])), "--lambda", "0.5", "--select", "only_loss"]) == 2
    assert "proposal 0" in capsys.readouterr().err


def test_sweep_and_correlate(write_jsonl, tmp_path, capsys):
    inp = write_jsonl(make_samples(6, seed=5))
    a = tmp_path / "a.csv"
    assert main(["sweep", str(inp), "--lambda-step", "0.01", "--lambda-min", "0.01", "-o", str(a),
                 "--workers", "1"]) == 0
    assert "best R@1,IoU=0.5" in capsys.readouterr().err
    rows = list(csv.reader(a.open()))
    assert rows[0][0] == "lambda" and len(rows) == 101
    corr = tmp_path / "c.csv"
    assert main(["correlate", str(a), str(a), "--columns", "R@5,mIoU", "R@1,mIoU", "-o", str(corr)]) == 0
    table = list(csv.reader(corr.open()))
    assert table == [["metric", "pearson"], ["R@5,mIoU", "1"], ["R@1,mIoU", "1"]]


def test_sweep_requires_ground_truth(write_jsonl, capsys):
    assert main(["sweep", str(write_jsonl([one_gauss(ground_truth=None)])), "--lambda-step", "0.5"]) == 2
    assert "s0" in capsys.readouterr().err


def test_sweep_bad_metric_is_usage_error(write_jsonl):
    assert main(["sweep", str(write_jsonl([one_gauss()])), "--metrics", "P@1"]) == 1


def test_eval_ground_truth_predictions_score_100(write_jsonl, tmp_path, capsys):
    samples = make_samples(8, seed=6)
    preds = [{"id": s["id"], "segments": [{"start_sec": s["ground_truth"]["start_sec"],
                                           "end_sec": s["ground_truth"]["end_sec"], "score": 1.0}]}
             for s in samples]
    out = tmp_path / "report.csv"
    assert main(["eval", str(write_jsonl(samples)), str(write_jsonl(preds, "p.jsonl")), "-o", str(out)]) == 0
    assert "R@1,IoU=0.5" in capsys.readouterr().out
    rows = list(csv.reader(out.open()))[1:]
    assert rows and all(float(v) == 100.0 for _, v in rows)


def test_eval_four_sample_fixture(write_jsonl, capsys):
    samples, preds = [], []
    for i, v in enumerate([0.8, 0.6, 0.4, 0.2]):
        samples.append({"id": f"q{i}", "duration_sec": 10.0,
                        "proposals": [{"kind": "gauss", "center": 0.5, "width": 0.9}],
                        "ground_truth": {"start_sec": 0.0, "end_sec": 10.0}})
        preds.append({"id": f"q{i}", "segments": [{"start_sec": 0.0, "end_sec": 10.0 * v, "score": 1.0}]})
    assert main(["eval", str(write_jsonl(samples)), str(write_jsonl(preds, "p.jsonl")),
                 "--n", "1", "--m", "0.5"]) == 0
    table = dict(line.split() for line in capsys.readouterr().out.splitlines()[2:-1])
    assert table == {"R@1,IoU=0.5": "50.00", "R@1,mIoU": "50.00"}


def test_eval_errors(write_jsonl, tmp_path):
    samples = write_jsonl([one_gauss()])
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    assert main(["eval", str(samples), str(empty)]) == 2
    other = write_jsonl([{"id": "zzz", "segments": [{"start_sec": 0, "end_sec": 1, "score": 0}]}], "o.jsonl")
    assert main(["eval", str(samples), str(other)]) == 2


def test_verify_deterministic(capsys):
    assert main(["verify", "--trials", "20", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--trials", "20", "--seed", "7"]) == 0
    assert capsys.readouterr().out == first
    assert "PASS" in first


def test_verify_reports_failure(monkeypatch, capsys):
    import gbo.verify as verify
    monkeypatch.setattr(verify, "ENDPOINT_TOL", 1e-9)
    assert main(["verify", "--trials", "5"]) == 3
    assert "FAIL" in capsys.readouterr().out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gbo", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and "0.1.0" in r.stdout
