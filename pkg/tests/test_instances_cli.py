"""Instance decoding, execution, CLI exit codes, report determinism."""

import copy
import json

import numpy as np
import pytest

from setcover_kit.cli import main
from setcover_kit.instances import (
    EXIT_FALSIFIED,
    EXIT_INPUT,
    EXIT_OK,
    InstanceError,
    builtin_instances,
    decode_instance,
    jsonify,
    render_text,
    run_instance,
)


class TestDecode:
    def test_builtins_decode(self):
        for name, data in builtin_instances().items():
            decoded = decode_instance(data)
            assert decoded["kind"] == data["kind"], name

    def test_unknown_field_reports_path(self):
        data = copy.deepcopy(builtin_instances()["t1"])
        data["maps"]["psi"]["bogus"] = 1
        with pytest.raises(InstanceError) as err:
            decode_instance(data)
        assert "$.maps.psi.bogus" in str(err.value)

    def test_wrong_version(self):
        data = copy.deepcopy(builtin_instances()["t1"])
        data["version"] = "setcover-kit/2"
        with pytest.raises(InstanceError) as err:
            decode_instance(data)
        assert "$.version" in str(err.value)

    def test_missing_block(self):
        data = copy.deepcopy(builtin_instances()["t1"])
        del data["solve"]
        with pytest.raises(InstanceError):
            decode_instance(data)

    def test_bad_number_reports_path(self):
        data = copy.deepcopy(builtin_instances()["t1"])
        data["maps"]["psi"]["a"] = "fast"
        with pytest.raises(InstanceError) as err:
            decode_instance(data)
        assert "$.maps.psi.a" in str(err.value)

    def test_nested_matrix_path(self):
        data = copy.deepcopy(builtin_instances()["sublinear"])
        data["maps"]["psi"]["groups"][0][1] = ["oops", 0.0]
        with pytest.raises(InstanceError) as err:
            decode_instance(data)
        assert "groups[0][1][0]" in str(err.value)

    def test_penalty_l_exclusivity(self):
        data = copy.deepcopy(builtin_instances()["t1_penalty"])
        data["penalty"]["l"] = 2.0  # together with threshold_factor
        with pytest.raises(InstanceError):
            decode_instance(data)


class TestRun:
    def test_t1_solve(self):
        decoded = decode_instance(builtin_instances()["t1"])
        code, result = run_instance(decoded)
        assert code == EXIT_OK
        assert result["trace"]["status"] == "converged"
        assert result["trace"]["iterates"][-1]["residual"] <= 1e-6

    def test_certify_expectations(self):
        data = builtin_instances()["sphere_scale_set_covering"]
        code, result = run_instance(decode_instance(data))
        assert code == EXIT_OK  # falsified, but the instance expected that
        assert result["certificate"]["verdict"] == "falsified"
        unexpected = copy.deepcopy(data)
        unexpected["certify"]["expect"] = None
        del unexpected["certify"]["expect"]
        code2, _ = run_instance(decode_instance(unexpected))
        assert code2 == EXIT_FALSIFIED

    def test_penalty_instance(self):
        decoded = decode_instance(builtin_instances()["t1_penalty"])
        code, result = run_instance(decoded)
        assert code == EXIT_OK
        assert result["threshold"] == pytest.approx(1.0 / 0.49)
        assert abs(abs(result["minimizer"]["x"][0]) - 2.0) <= 1e-4
        assert result["exactness"]["verdict"] == "no-counterexample-found"

    def test_family_instance(self):
        decoded = decode_instance(builtin_instances()["family"])
        code, result = run_instance(decoded)
        assert code == EXIT_OK
        assert result["calmness"]["slope"] == pytest.approx(2.0, abs=0.05)
        assert result["semiregularity"]["theta"] == pytest.approx(2.0, abs=0.05)

    def test_deterministic_results(self):
        for name in ("t1", "sphere_scale_set_covering", "sublinear", "sfix"):
            decoded = decode_instance(builtin_instances()[name])
            _, a = run_instance(decoded, seed=0)
            _, b = run_instance(decoded, seed=0)
            assert json.dumps(jsonify(a), sort_keys=True) == \
                json.dumps(jsonify(b), sort_keys=True), name


class TestCli:
    def write(self, tmp_path, data, name="inst.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    def test_solve_exit_zero(self, tmp_path, capsys):
        path = self.write(tmp_path, builtin_instances()["t1"])
        assert main(["solve", "--instance", path, "--seed", "0"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["result"]["trace"]["status"] == "converged"
        assert report["result"]["trace"]["iterates"][-1]["residual"] <= 1e-6

    def test_certify_falsified_exit_two(self, tmp_path):
        data = copy.deepcopy(builtin_instances()["sphere_scale_set_covering"])
        del data["certify"]["expect"]
        path = self.write(tmp_path, data)
        assert main(["certify", "--instance", path]) == EXIT_FALSIFIED

    def test_unknown_subcommand_exit_three(self, capsys):
        assert main(["frobnicate"]) == EXIT_INPUT

    def test_no_subcommand_exit_three(self):
        assert main([]) == EXIT_INPUT

    def test_malformed_json_exit_three(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["certify", "--instance", str(path)]) == EXIT_INPUT
        assert "input error" in capsys.readouterr().err

    def test_schema_error_exit_three_with_path(self, tmp_path, capsys):
        data = copy.deepcopy(builtin_instances()["t1"])
        data["parameters"]["sneed"] = 1
        path = self.write(tmp_path, data)
        assert main(["solve", "--instance", str(path)]) == EXIT_INPUT
        assert "$.parameters.sneed" in capsys.readouterr().err

    def test_kind_mismatch(self, tmp_path, capsys):
        path = self.write(tmp_path, builtin_instances()["t1"])
        assert main(["certify", "--instance", path]) == EXIT_INPUT

    def test_report_file_and_byte_identical_results(self, tmp_path, capsys):
        path = self.write(tmp_path, builtin_instances()["t1"])
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        assert main(["solve", "--instance", path, "--seed", "0", "--out", str(out1)]) == 0
        assert main(["solve", "--instance", path, "--seed", "0", "--out", str(out2)]) == 0
        capsys.readouterr()
        r1 = json.loads(out1.read_text())
        r2 = json.loads(out2.read_text())
        # timestamps are isolated in meta; the result section compares byte-identically
        assert json.dumps(r1["result"], sort_keys=True) == \
            json.dumps(r2["result"], sort_keys=True)
        assert "timestamp" in r1["meta"]

    def test_text_format(self, tmp_path, capsys):
        path = self.write(tmp_path, builtin_instances()["t1"])
        assert main(["solve", "--instance", path, "--format", "text"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "status: converged" in out

    def test_demo_runs_clean(self, capsys):
        assert main(["demo"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.count("[ok]") == 8

    def test_jsonify_sentinels(self):
        blob = jsonify({"a": float("inf"), "b": float("-inf"), "c": float("nan"),
                        "d": np.float64(1.5), "e": np.array([1.0, 2.0])})
        assert blob == {"a": "inf", "b": "-inf", "c": "nan", "d": 1.5, "e": [1.0, 2.0]}

    def test_render_text_stable(self):
        text = render_text({"x": 1, "nested": {"y": [1, 2]}})
        assert text.splitlines()[0] == "x: 1"
