import csv
import io
import json
import math

import pytest

from sineq.cli import main


def run_cli(capsys, *args) -> tuple[int, str]:
    code = main(list(args))
    return code, capsys.readouterr().out


def parse_jsonl(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line]


class TestMeasureCommand:
    def test_cylinder_closed_form(self, capsys):
        code, out = run_cli(
            capsys, "measure", "--body", "cylinder:R=1.1774100,n=2",
            "--measure", "complex-gaussian",
        )
        assert code == 0
        (rec,) = parse_jsonl(out)
        assert rec["value"] == pytest.approx(0.5, abs=1e-6)
        assert rec["method"] == "closed-form"
        assert rec["schema_version"] == 1

    def test_polydisc_mc(self, capsys):
        code, out = run_cli(
            capsys, "measure", "--body", "polydisc:r=1,1",
            "--measure", "complex-gaussian", "--engine", "mc",
            "--samples", "100000", "--seed", "5",
        )
        assert code == 0
        (rec,) = parse_jsonl(out)
        truth = (1 - math.exp(-0.5)) ** 2
        assert abs(rec["value"] - truth) <= 3 * rec["std_error"]
        assert rec["seed"] == 5 and rec["samples"] == 100000

    def test_invalid_descriptor_exits_2(self, capsys):
        assert main(["measure", "--body", "blob:x=1", "--measure", "complex-gaussian"]) == 2

    def test_exponential_strip(self, capsys):
        code, out = run_cli(
            capsys, "measure", "--body", "strip:p=0.6931471805599453,n=2",
            "--measure", "exponential",
        )
        (rec,) = parse_jsonl(out)
        assert rec["value"] == pytest.approx(0.5, abs=1e-12)


class TestVerifyCommand:
    def test_cylinder_all_margins_zero(self, capsys):
        code, out = run_cli(
            capsys, "verify", "--body", "cylinder:R=1.5,n=2", "--grid", "1,2,3",
        )
        assert code == 0
        recs = parse_jsonl(out)
        for rec in recs:
            if rec["kind"] == "dilation":
                assert abs(rec["margin"]) <= 1e-10
            assert rec["verdict"] == "holds"

    def test_polydisc_holds(self, capsys):
        code, out = run_cli(
            capsys, "verify", "--body", "polydisc:r=1,1", "--grid", "1,1.5,2",
        )
        assert code == 0
        kinds = {r["kind"] for r in parse_jsonl(out)}
        assert kinds == {"derivative", "gaussian-moment", "dilation"}

    def test_upward_set_rejected_exit_2(self, capsys):
        assert main(["verify", "--body", "upper-set:c=1,n=2"]) == 2

    def test_annulus_experimental_certifies_violation_exit_3(self, capsys):
        code, out = run_cli(
            capsys, "verify", "--body", "annulus:inner=1,outer=2",
            "--experimental", "--engine", "mc", "--samples", "30000", "--seed", "11",
            "--grid", "1,2",
        )
        assert code == 3
        assert any(r["verdict"] == "violated" for r in parse_jsonl(out))

    def test_csv_format(self, capsys):
        code, out = run_cli(
            capsys, "verify", "--body", "polydisc:r=1,1", "--grid", "1,2",
            "--format", "csv",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert {r["kind"] for r in rows} == {"derivative", "gaussian-moment", "dilation"}
        assert all(r["verdict"] == "holds" for r in rows)


class TestEntropyCommand:
    def test_1d_equality_case(self, capsys):
        code, out = run_cli(
            capsys, "entropy", "--lemma", "1d",
            "--f", "step:0.6931471805599453:0,1", "--tail-measure", "exponential-1d",
        )
        assert code == 0
        (rec,) = parse_jsonl(out)
        assert rec["margin"] == pytest.approx(0.0, abs=1e-12)

    def test_1d_atoms_measure(self, capsys):
        code, out = run_cli(
            capsys, "entropy", "--lemma", "1d",
            "--f", "step:0.5:0,1", "--tail-measure", "atoms:0@0.5,1@0.5",
        )
        assert code == 0
        (rec,) = parse_jsonl(out)
        assert rec["reference"] == math.inf or rec["reference"] == float("inf")

    def test_multidim_exact(self, capsys):
        code, out = run_cli(
            capsys, "entropy", "--lemma", "multidim", "--body", "polydisc:r=1,1",
            "--engine", "exact",
        )
        assert code == 0
        (rec,) = parse_jsonl(out)
        assert rec["margin"] == pytest.approx(0.09648872405403502, abs=1e-12)

    def test_subadditivity(self, capsys):
        code, out = run_cli(
            capsys, "entropy", "--lemma", "subadditivity", "--body",
            "cylinder:R=1.0,n=2", "--engine", "exact",
        )
        assert code == 0
        (rec,) = parse_jsonl(out)
        assert rec["margin"] == pytest.approx(0.0, abs=1e-10)


class TestMomentsCommand:
    def test_linf_holds(self, capsys):
        code, out = run_cli(
            capsys, "moments", "--norm", "linf", "--n", "3", "--p", "2", "--q", "1",
            "--samples", "100000",
        )
        assert code == 0
        (rec,) = parse_jsonl(out)
        assert rec["ratio"] <= 1.4142135623730951 + 3 * rec["ratio_se"]

    def test_bad_exponents_exit_2(self, capsys):
        assert main(["moments", "--norm", "linf", "--n", "2", "--p", "1", "--q", "2"]) == 2


class TestFuzzCommand:
    def test_small_polydisc_sweep(self, capsys):
        code, out = run_cli(
            capsys, "fuzz", "--family", "polydisc", "--n", "2", "--count", "4",
            "--samples", "30000", "--seed", "7", "--grid", "1,2",
        )
        assert code == 0
        recs = parse_jsonl(out)
        assert sum(r["kind"] == "fuzz-body" for r in recs) == 4
        summary = [r for r in recs if r["kind"] == "fuzz-summary"][0]
        assert summary["verdict"].startswith("4 holds")


class TestReproducibility:
    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        out1 = tmp_path / "a.jsonl"
        out2 = tmp_path / "b.jsonl"
        args = [
            "verify", "--body", "polydisc:r=1,1.5", "--engine", "mc",
            "--samples", "50000", "--seed", "13", "--grid", "1,2",
        ]
        assert main(args + ["--output", str(out1)]) == 0
        assert main(args + ["--output", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_worker_count_does_not_change_output(self, tmp_path):
        out1 = tmp_path / "w1.csv"
        out4 = tmp_path / "w4.csv"
        args = [
            "measure", "--body", "polydisc:r=1,1", "--measure", "complex-gaussian",
            "--engine", "mc", "--samples", "200000", "--format", "csv",
        ]
        assert main(args + ["--workers", "1", "--output", str(out1)]) == 0
        assert main(args + ["--workers", "4", "--output", str(out4)]) == 0
        assert out1.read_bytes() == out4.read_bytes()

    def test_config_file_defaults_and_override(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"samples": 50000, "seed": 3, "engine": "mc"}))
        code, out = run_cli(
            capsys, "--config", str(cfg), "measure", "--body", "polydisc:r=1,1",
            "--measure", "complex-gaussian",
        )
        assert code == 0
        (rec,) = parse_jsonl(out)
        assert rec["samples"] == 50000 and rec["seed"] == 3
        code, out = run_cli(
            capsys, "--config", str(cfg), "measure", "--body", "polydisc:r=1,1",
            "--measure", "complex-gaussian", "--samples", "60000",
        )
        (rec,) = parse_jsonl(out)
        assert rec["samples"] == 60000

    def test_missing_config_exits_2(self):
        assert main(["--config", "/nonexistent.json", "measure", "--body", "x:y=1"]) == 2
