"""CLI contract tests: flag/config parsing, output schemas, round trips,
determinism and exit codes."""

import json

import pytest

from phi_ineq.cli import (
    LEDGER_COLUMNS,
    REPORT_COLUMNS,
    main,
    parse_config,
)
from phi_ineq.errors import UsageError

CSV_HEADER = "function,kernel,theorem,a,b,x,lambda,alpha,q,p,s,lhs,rhs,margin,hypothesis_ok,status"


def test_report_columns_contract():
    assert ",".join(REPORT_COLUMNS) == CSV_HEADER


class TestParseConfig:
    def test_valid_verify(self):
        cfg = parse_config(["verify", "--fn", "t^3", "--x", "0.5", "--lambda", "0",
                            "--alpha", "1", "--q", "1", "--kernel", "constant",
                            "--theorem", "t1"])
        assert cfg.command == "verify"
        assert cfg.function == "t^3"
        assert cfg.kernel.kind == "constant"
        assert cfg.theorem == "t1"

    def test_sweep_with_config_file(self, tmp_path):
        plan_file = tmp_path / "plan.json"
        plan_file.write_text(json.dumps({
            "functions": ["t^2"], "kernels": ["constant", "power:0.5"],
            "x": [0.5], "lambda": [0.0, 1.0], "alpha": [1.0], "q": [1.0, 2.0],
        }))
        cfg = parse_config(["sweep", "--config", str(plan_file)])
        assert cfg.plan.function_names == ("t^2",)
        assert len(cfg.plan.kernels) == 2

    def test_lambda_constraint_named(self):
        with pytest.raises(UsageError) as info:
            parse_config(["verify", "--fn", "t^2", "--lambda", "1.5"])
        assert any("lambda" in v and "[0, 1]" in v for v in info.value.violations)

    def test_all_violations_listed(self):
        with pytest.raises(UsageError) as info:
            parse_config(["verify", "--fn", "t^2", "--lambda", "1.5",
                          "--alpha", "-1", "--q", "0.5"])
        assert len(info.value.violations) >= 3

    def test_unknown_config_fields_rejected(self, tmp_path):
        plan_file = tmp_path / "plan.json"
        plan_file.write_text(json.dumps({"functions": ["t^2"], "bogus": 1}))
        with pytest.raises(UsageError) as info:
            parse_config(["sweep", "--config", str(plan_file)])
        assert any("bogus" in v for v in info.value.violations)

    def test_power_kernel_requires_s(self):
        with pytest.raises(UsageError):
            parse_config(["verify", "--fn", "t^2", "--kernel", "power"])

    def test_t2_requires_q_above_one(self):
        with pytest.raises(UsageError):
            parse_config(["verify", "--fn", "t^2", "--theorem", "t2"])

    def test_unknown_flag_is_usage_error(self):
        with pytest.raises(UsageError):
            parse_config(["verify", "--fn", "t^2", "--frobnicate", "1"])


class TestExecute:
    def test_verify_equality_case_csv(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code = main(["verify", "--fn", "t^3", "--x", "0.5", "--lambda", "0",
                     "--alpha", "1", "--q", "1", "--kernel", "constant",
                     "--theorem", "t1", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        row = lines[1].split(",")
        assert row[0] == "t^3" and row[-1] == "PASS"
        margin = float(row[REPORT_COLUMNS.index("margin")])
        assert abs(margin) <= 1e-9

    def test_verify_stdout(self, capsys):
        code = main(["verify", "--fn", "t^2", "--theorem", "hh"])
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith(CSV_HEADER)
        assert ",HH," in out

    def test_json_round_trip(self, tmp_path):
        out = tmp_path / "r.json"
        assert main(["verify", "--fn", "t^2", "--theorem", "t2", "--q", "2",
                     "--format", "json", "--out", str(out)]) == 0
        raw = out.read_bytes()
        obj = json.loads(raw)
        again = (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode()
        assert raw == again

    def test_sweep_determinism(self, tmp_path, capsys):
        plan_file = tmp_path / "plan.json"
        plan_file.write_text(json.dumps({
            "functions": ["t^2", "t^3", "sqrt_control"],
            "kernels": ["constant", "mt"],
            "x": [0.25, 0.5], "lambda": [0.0, 1.0], "alpha": [0.5, 1.0],
            "q": [1.0, 2.0],
        }))
        out1, out2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
        assert main(["sweep", "--config", str(plan_file), "--out", str(out1)]) == 0
        assert main(["sweep", "--config", str(plan_file), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        capsys.readouterr()

    def test_sweep_json_round_trip(self, tmp_path, capsys):
        plan_file = tmp_path / "plan.json"
        plan_file.write_text(json.dumps({
            "functions": ["t^2"], "kernels": ["constant"],
            "x": [0.5], "lambda": [0.0], "alpha": [1.0], "q": [2.0],
        }))
        out = tmp_path / "s.json"
        assert main(["sweep", "--config", str(plan_file), "--format", "json",
                     "--out", str(out)]) == 0
        raw = out.read_bytes()
        obj = json.loads(raw)
        assert (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode() == raw
        capsys.readouterr()

    def test_coeffs_schema_and_determinism(self, tmp_path):
        out1, out2 = tmp_path / "c1.csv", tmp_path / "c2.csv"
        assert main(["coeffs", "--out", str(out1)]) == 0
        assert main(["coeffs", "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        lines = out1.read_text().splitlines()
        assert lines[0] == ",".join(LEDGER_COLUMNS)
        assert any(",DISAGREES" in line for line in lines)
        assert any(",PRINTED_UNDEFINED" in line for line in lines)

    def test_preset_rows(self, capsys):
        assert main(["verify", "--fn", "t^3", "--preset", "c2"]) == 0
        out = capsys.readouterr().out
        assert out.count("\n") == 4  # header + three lambda presets
        for lam in ("0.3333333333333333", "0.0", "1.0"):
            assert f",{lam}," in out


class TestExitCodes:
    def test_pass_is_zero(self):
        assert main(["verify", "--fn", "t^2", "--theorem", "t1"]) == 0

    def test_fault_injection_is_one(self, capsys):
        code = main(["verify", "--fn", "t^2", "--theorem", "t1",
                     "--inject-bound-scale", "0.01"])
        assert code == 1
        capsys.readouterr()

    def test_usage_is_two(self, capsys):
        assert main(["verify", "--fn", "t^2", "--lambda", "1.5"]) == 2
        err = capsys.readouterr().err
        assert "lambda" in err

    def test_numerical_failure_is_three(self, capsys):
        code = main(["verify", "--fn", "t^2", "--theorem", "t1",
                     "--quad-tol", "1e-30"])
        assert code == 3
        capsys.readouterr()

    def test_sweep_fault_injection_is_one(self, tmp_path, capsys):
        plan_file = tmp_path / "plan.json"
        plan_file.write_text(json.dumps({
            "functions": ["t^2"], "kernels": ["constant"],
            "x": [0.5], "lambda": [0.0], "alpha": [1.0], "q": [1.0],
        }))
        code = main(["sweep", "--config", str(plan_file),
                     "--inject-bound-scale", "0.001"])
        assert code == 1
        capsys.readouterr()

    def test_hypothesis_unmet_not_a_failure(self, capsys):
        code = main(["verify", "--fn", "sqrt_control", "--theorem", "t1"])
        assert code == 0
        out = capsys.readouterr().out
        assert "HYPOTHESIS_UNMET" in out
