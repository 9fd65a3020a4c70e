"""End-to-end tests of the command-line interface, run in process."""

import json

import numpy as np
import pytest

import hopflck.cli as cli
import hopflck.maps as mp


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def quadratic_map_file(tmp_path):
    g = mp.PolyAutomorphism.from_tables(
        [{(1, 0): 1.0, (0, 2): 1.0}, {(0, 1): 1.0}])
    return write_json(tmp_path / "quad.json", mp.map_to_json(g))


def matrix_file(tmp_path, matrix, name="mat.json"):
    return write_json(tmp_path / name,
                      {"matrix": mp.matrix_to_json(np.asarray(matrix))})


class TestVerifyCommand:
    def test_passing_entry(self, capsys):
        code, out, _ = run(capsys, ["verify", "--entry", "example1",
                                    "--points", "50", "--seed", "7"])
        assert code == 0
        payload = json.loads(out)
        assert payload["command"] == "verify"
        assert payload["entry"] == "example1"
        assert payload["status"] == "pass"
        assert payload["points"] == 50 and payload["seed"] == 7
        names = [r["check_name"] for r in payload["reports"]]
        assert names[0] == "lck_residual" and names[-1] == "contraction"

    def test_output_is_byte_identical_across_runs(self, capsys, tmp_path):
        argv = ["verify", "--entry", "example1", "--points", "60"]
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        assert cli.main(argv + ["--out", str(a)]) == 0
        assert cli.main(argv + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_parameter_flags_reach_entry(self, capsys):
        code, out, _ = run(capsys, ["verify", "--entry", "example1",
                                    "--points", "30", "--mu-re", "3"])
        assert code == 0
        assert json.loads(out)["parameters"]["mu"] == [3.0, 0.0]

    def test_unattainable_tolerance_fails(self, capsys):
        code, out, _ = run(capsys, ["verify", "--entry", "example1",
                                    "--points", "30", "--tol", "1e-20"])
        assert code == 1
        assert json.loads(out)["status"] == "fail"

    def test_config_file(self, capsys, tmp_path):
        conf = write_json(tmp_path / "conf.json",
                          {"entry": "example1", "points": 40, "seed": 3,
                           "parameters": {"mu": [2.5, 0.0]}})
        code, out, _ = run(capsys, ["verify", "--file", conf])
        assert code == 0
        payload = json.loads(out)
        assert payload["points"] == 40 and payload["seed"] == 3
        assert payload["parameters"]["mu"] == [2.5, 0.0]

    def test_flags_override_config_file(self, capsys, tmp_path):
        conf = write_json(tmp_path / "conf.json",
                          {"entry": "example1", "points": 40})
        code, out, _ = run(capsys, ["verify", "--file", conf,
                                    "--points", "25"])
        assert code == 0 and json.loads(out)["points"] == 25

    def test_entry_and_file_conflict(self, capsys, tmp_path):
        conf = write_json(tmp_path / "conf.json", {"entry": "example1"})
        code, _, err = run(capsys, ["verify", "--entry", "example1",
                                    "--file", conf])
        assert code == 2 and "not both" in err

    def test_missing_entry(self, capsys):
        code, _, err = run(capsys, ["verify", "--points", "10"])
        assert code == 2 and "entry" in err

    def test_unknown_entry(self, capsys):
        code, _, err = run(capsys, ["verify", "--entry", "zzz"])
        assert code == 2 and "known entries" in err

    def test_bad_parameter_value(self, capsys):
        code, _, err = run(capsys, ["verify", "--entry", "example1",
                                    "--mu-re", "0.5"])
        assert code == 2 and "mu" in err

    def test_unknown_config_key(self, capsys, tmp_path):
        conf = write_json(tmp_path / "conf.json",
                          {"entry": "example1", "извне": 1})
        code, _, err = run(capsys, ["verify", "--file", conf])
        assert code == 2 and "valid keys" in err

    def test_unknown_parameter_key(self, capsys, tmp_path):
        conf = write_json(tmp_path / "conf.json",
                          {"entry": "example1", "parameters": {"beta": 1.0}})
        code, _, err = run(capsys, ["verify", "--file", conf])
        assert code == 2 and "beta" in err

    def test_unreadable_config(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, ["verify", "--file", str(bad)])
        assert code == 2 and "JSON" in err


class TestDeformCommand:
    def test_linearize_quadratic(self, capsys, tmp_path):
        code, out, _ = run(capsys, ["deform", "--file",
                                    quadratic_map_file(tmp_path),
                                    "--family", "linearize", "--t", "0.5"])
        assert code == 0
        payload = json.loads(out)
        assert payload["family"] == "linearize"
        assert payload["at_one_equals_input"] is True
        assert payload["limit_equals_linear_part"] is True
        at = mp.map_from_json(payload["map_at_t"])
        assert at.eval((1.0, 1.0)) == (1.5, 1.0)
        assert mp.map_from_json(payload["limit0"]).is_linear()

    def test_linearize_accepts_matrix_file(self, capsys, tmp_path):
        path = matrix_file(tmp_path, [[0.5, 1.0], [0.0, 0.5]])
        code, out, _ = run(capsys, ["deform", "--file", path,
                                    "--family", "linearize"])
        assert code == 0
        assert json.loads(out)["at_one_equals_input"] is True

    def test_diagonalize_jordan_matrix(self, capsys, tmp_path):
        path = matrix_file(tmp_path, [[0.5, 1.0], [0.0, 0.5]])
        code, out, _ = run(capsys, ["deform", "--file", path,
                                    "--family", "diagonalize", "--t", "0.25"])
        assert code == 0
        payload = json.loads(out)
        at = mp.matrix_from_json(payload["matrix_at_t"])
        assert at[0, 1] == 0.25
        lim = mp.matrix_from_json(payload["limit0"])
        assert np.array_equal(lim, np.diag([0.5, 0.5]))

    def test_diagonalize_rejects_nonlinear_map(self, capsys, tmp_path):
        code, _, err = run(capsys, ["deform", "--file",
                                    quadratic_map_file(tmp_path),
                                    "--family", "diagonalize"])
        assert code == 2 and "matrix" in err

    def test_diagonalize_rejects_non_jordan_matrix(self, capsys, tmp_path):
        path = matrix_file(tmp_path, [[1.0, 0.5], [0.0, 1.0]])
        code, _, err = run(capsys, ["deform", "--file", path,
                                    "--family", "diagonalize"])
        assert code == 2 and "neither 0 nor 1" in err

    def test_file_without_map_or_matrix(self, capsys, tmp_path):
        path = write_json(tmp_path / "empty.json", {"other": 1})
        code, _, err = run(capsys, ["deform", "--file", path,
                                    "--family", "linearize"])
        assert code == 2 and "components" in err

    def test_out_file(self, capsys, tmp_path):
        out_path = tmp_path / "res.json"
        code, out, _ = run(capsys, ["deform", "--file",
                                    quadratic_map_file(tmp_path),
                                    "--family", "linearize",
                                    "--out", str(out_path)])
        assert code == 0 and out == ""
        assert json.loads(out_path.read_text())["command"] == "deform"


class TestJordanCommand:
    def test_diagonalizable(self, capsys, tmp_path):
        path = matrix_file(tmp_path, [[2.0, 0.0], [0.0, 3.0]])
        code, out, _ = run(capsys, ["jordan", "--file", path])
        assert code == 0
        payload = json.loads(out)
        assert sorted(b["size"] for b in payload["blocks"]) == [1, 1]
        assert payload["reconstruction_residual"] < 1e-12

    def test_defective(self, capsys, tmp_path):
        path = matrix_file(tmp_path, [[0.5, 1.0], [0.0, 0.5]])
        code, out, _ = run(capsys, ["jordan", "--file", path])
        assert code == 0
        payload = json.loads(out)
        assert [b["size"] for b in payload["blocks"]] == [2]
        assert payload["blocks"][0]["eigenvalue"] == pytest.approx([0.5, 0.0])

    def test_gray_zone_reports_failure(self, capsys, tmp_path):
        path = matrix_file(tmp_path, [[0.5, 5e-9], [0.0, 0.5]])
        code, out, err = run(capsys, ["jordan", "--file", path])
        assert code == 1
        assert "gray zone" in json.loads(out)["error"]
        assert "jordan" in err

    def test_needs_matrix_key(self, capsys, tmp_path):
        code, _, err = run(capsys, ["jordan", "--file",
                                    quadratic_map_file(tmp_path)])
        assert code == 2 and "matrix" in err


class TestContractionCommand:
    def test_certifies_uniform_contraction(self, capsys, tmp_path):
        path = matrix_file(tmp_path, [[0.5, 0.0], [0.0, 0.5]])
        code, out, _ = run(capsys, ["contraction", "--file", path,
                                    "--radius", "2"])
        assert code == 0
        payload = json.loads(out)
        assert payload["is_contraction"] is True
        assert payload["iterations_needed"] == 21
        assert payload["num_points"] == 72

    def test_identity_fails(self, capsys, tmp_path):
        path = matrix_file(tmp_path, np.eye(2))
        code, out, _ = run(capsys, ["contraction", "--file", path])
        assert code == 1
        payload = json.loads(out)
        assert payload["is_contraction"] is False
        assert "spectral" in payload["reason"]

    def test_divergent_orbit(self, capsys, tmp_path):
        g = mp.PolyAutomorphism.from_tables(
            [{(1, 0): 0.5, (2, 0): 1.0}, {(0, 1): 0.5}])
        path = write_json(tmp_path / "div.json", mp.map_to_json(g))
        code, out, err = run(capsys, ["contraction", "--file", path,
                                      "--radius", "10"])
        assert code == 1
        assert json.loads(out)["diverged"] is True
        assert "contraction" in err


class TestSolveLeeCommand:
    def test_catalog_entry(self, capsys):
        code, out, _ = run(capsys, ["solve-lee", "--entry", "example1",
                                    "--points", "20", "--seed", "5"])
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "pass"
        assert payload["max_residual"] < 1e-10
        assert payload["max_reality_defect"] < 1e-9
        assert len(payload["results"]) == 20

    def test_kaehler_entry_recovers_zero(self, capsys):
        code, out, _ = run(capsys, ["solve-lee", "--entry", "example2",
                                    "--points", "10"])
        assert code == 0
        payload = json.loads(out)
        worst = max(abs(c) for r in payload["results"]
                    for pair in r["theta_coeffs"] for c in pair)
        assert worst < 1e-12

    def test_entry_without_forms(self, capsys):
        code, _, err = run(capsys, ["solve-lee", "--entry", "kodaira"])
        assert code == 2 and "no 2-form" in err


class TestParser:
    def test_missing_command_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_console_entry_point_exists(self):
        import importlib.metadata as md
        eps = md.entry_points(group="console_scripts")
        assert any(e.name == "hopflck" for e in eps)
