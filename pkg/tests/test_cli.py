import argparse
import json
import math
import subprocess
import sys

import pytest

from gnumsd.cli import main, parse_angle
from gnumsd.codes import GnuParams
from gnumsd.engine import InputEnsemble
from gnumsd.oracle import build_rho_n, project_and_decode


class TestParseAngle:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("pi", math.pi),
            ("pi/4", math.pi / 4),
            ("3pi/8", 3 * math.pi / 8),
            ("-7pi/8", -7 * math.pi / 8),
            ("2*pi", 2 * math.pi),
            ("0.5pi", math.pi / 2),
            ("1.5708", 1.5708),
            ("0", 0.0),
        ],
    )
    def test_accepted_forms(self, text, expected):
        assert parse_angle(text) == pytest.approx(expected, abs=1e-15)

    def test_rejects_garbage(self):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_angle("onepi")


class TestDistill:
    def test_hand_point_record(self, capsys):
        code = main(
            "distill --g 1 --n 1 --u 2 --v 0.785398163397448 --theta 0 --eps 0 --format json".split()
        )
        assert code == 0
        record = json.loads(capsys.readouterr().out)
        assert record["ps"] == pytest.approx(0.75, abs=1e-10)
        assert record["a"] == pytest.approx(0.25, abs=1e-10)
        assert record["b"] == pytest.approx(0.5, abs=1e-10)
        assert record["c_re"] == pytest.approx(1 / (2 * math.sqrt(2)), abs=1e-10)
        assert record["rho01_im"] == -record["rho10_im"]

    def test_codeword_point(self, capsys):
        assert main("distill --v 0 --theta 0 --eps 0".split()) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["ps"] == 1.0
        assert record["m2"] == 0.0

    def test_u5_matches_dense_oracle(self, capsys):
        assert main("distill --g 1 --n 1 --u 5 --v 0.4 --theta pi/8 --eps 0.05".split()) == 0
        record = json.loads(capsys.readouterr().out)
        ens = InputEnsemble(0.4, math.pi / 8, 0.05)
        dense = project_and_decode(build_rho_n(ens, 5), GnuParams(1, 1, 5))
        assert record["a"] == pytest.approx(dense.w00, abs=1e-10)
        assert record["b"] == pytest.approx(dense.w11, abs=1e-10)
        assert record["c_im"] == pytest.approx(dense.w01.imag, abs=1e-10)

    def test_validation_failure_exits_2(self, capsys):
        assert main("distill --v 2.0 --theta 0 --eps 0".split()) == 2
        assert "invalid input" in capsys.readouterr().err

    def test_numeric_domain_failure_exits_3(self, capsys):
        assert main("distill --v 0 --theta 0 --eps 1".split()) == 3
        capsys.readouterr()

    def test_target_distance_included(self, capsys):
        assert main("distill --v 0 --theta 0 --eps 0 --target T".split()) == 0
        record = json.loads(capsys.readouterr().out)
        assert "trace_distance_to_target" in record

    def test_csv_format_single_row(self, capsys):
        assert main("distill --v 0 --theta 0 --eps 0 --format csv".split()) == 0
        out = capsys.readouterr().out
        lines = out.strip().split("\n")
        assert len(lines) == 2
        assert lines[0].startswith("g,n,u,v,theta,eps,a,b,")


class TestFigure:
    def test_unknown_id_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            main("figure --id nope".split())
        assert excinfo.value.code == 2

    def test_dataset_written_atomically_and_deterministically(self, tmp_path):
        out1 = tmp_path / "fig4_a.csv"
        out2 = tmp_path / "fig4_b.csv"
        assert main(["figure", "--id", "4", "--grid-step", "0.01", "--out", str(out1)]) == 0
        assert main(["figure", "--id", "4", "--grid-step", "0.01", "--out", str(out2)]) == 0
        first = out1.read_bytes()
        assert first == out2.read_bytes()
        assert first.startswith(b"eps,E_T,E_H\n")
        assert b"\r" not in first
        assert len(first.decode().strip().split("\n")) == 52
        assert not list(tmp_path.glob(".gnumsd-*"))

    def test_magic_dataset_columns(self, tmp_path):
        out = tmp_path / "fig1c.csv"
        assert main(["figure", "--id", "1c", "--grid-step", "pi/50", "--out", str(out)]) == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "v,M2_u2,M2_u3,M2_u4"
        first = [float(x) for x in lines[1].split(",")]
        assert first == [0.0, 0.0, 0.0, 0.0]

    def test_error_dataset_columns(self, tmp_path):
        out = tmp_path / "fig2b.csv"
        assert main(["figure", "--id", "2b", "--grid-step", "0.01", "--out", str(out)]) == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "eps,E_u2,E_u3,E_u4,E_bk"
        last = [float(x) for x in lines[-1].split(",")]
        assert last[0] == 0.5

    def test_composition_dataset_columns(self, tmp_path):
        out = tmp_path / "fig3b.csv"
        assert main(["figure", "--id", "3b", "--grid-step", "0.02", "--out", str(out)]) == 0
        header = out.read_text().split("\n", 1)[0]
        assert header == "eps,E_combined_T,E_combined_H,E_bk_T,E_bk_H"


class TestThresholdCommand:
    def test_bk_t(self, capsys):
        assert main("threshold --protocol bk --target T".split()) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["curve"] == "bk-T"
        assert abs(record["threshold"] - 0.1727) < 1e-3
        assert record["certified_at_half"] is False

    def test_gnu_certified(self, capsys):
        assert main("threshold --protocol gnu --target XT --g 1 --n 1 --u 2".split()) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["threshold"] == 0.5
        assert record["certified_at_half"] is True

    def test_bk_requires_plain_target(self, capsys):
        assert main("threshold --protocol bk --target XT".split()) == 2
        capsys.readouterr()


class TestSolveCommand:
    def test_repetition_code_table(self, capsys):
        assert main("solve --g 2 --n 1 --u 1 --target H --format csv".split()) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "v,theta,residual,input_magic"
        rows = [[float(x) for x in line.split(",")] for line in lines[1:]]
        v_exact = math.atan(1 / math.sqrt(1 + math.sqrt(2)))
        assert any(abs(r[0] - v_exact) < 1e-6 and abs(r[1]) < 1e-6 for r in rows)

    def test_custom_target(self, capsys):
        argv = "solve --g 1 --n 1 --u 2 --target custom --custom-state 1,0,0,0".split()
        assert main(argv) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["solutions"][0]["v"] == pytest.approx(0.0, abs=1e-9)

    def test_custom_target_requires_state(self, capsys):
        assert main("solve --g 1 --n 1 --u 2 --target custom".split()) == 2
        capsys.readouterr()


class TestMagicCurveCommand:
    def test_csv_shape(self, capsys):
        assert main("magic-curve --g 1 --n 1 --u 2 --theta pi/4 --grid-step pi/100".split()) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "v,M2"
        assert len(lines) == 52


class TestComposeCommand:
    def test_record_fields(self, capsys):
        assert main("compose --eps 0.1 --target T".split()) == 0
        record = json.loads(capsys.readouterr().out)
        assert 0 < record["error_total"] < record["eps"]
        assert 0 < record["error_stage_a"] < record["eps"]


class TestVerifyCommand:
    def test_exit_zero_and_report(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "oracle-equivalence: PASS" in out
        assert "circuit-equivalence: PASS" in out
        assert "closed-form-reconciliation: PASS" in out


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "gnumsd.cli", "distill", "--v", "0", "--theta", "0", "--eps", "0"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["ps"] == 1.0
