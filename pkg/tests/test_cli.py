import json
import subprocess
import sys

import pytest

from offrado.cli import main
from offrado.serialize import canonical_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    assert out.endswith("\n") and out.count("\n") == 1, "exactly one JSON document"
    doc = json.loads(out)
    assert canonical_json(doc) + "\n" == out, "stdout must be canonical JSON"
    return code, doc


class TestFormula:
    def test_discrete(self, capsys):
        code, doc = run_cli(capsys, "formula", "3", "4", "--mode", "discrete")
        assert code == 0 and doc["payload"]["value"] == "14"

    def test_continuous_scaled(self, capsys):
        code, doc = run_cli(capsys, "formula", "2", "3", "--mode", "continuous", "--gamma", "2")
        assert code == 0 and doc["payload"]["value"] == "14"

    def test_k1(self, capsys):
        code, doc = run_cli(capsys, "formula", "1", "5", "--mode", "k1")
        assert code == 0 and doc["payload"]["value"] == "5"

    @pytest.mark.parametrize(
        "argv",
        [
            ("formula", "4", "3", "--mode", "discrete"),
            ("formula", "2", "3", "--mode", "discrete", "--gamma", "2"),
            ("formula", "2", "3", "--gamma", "0"),
            ("formula", "2", "3", "--gamma", "0.5"),
            ("formula", "2", "5", "--mode", "k1"),
            ("formula", "2"),
            ("nonsense",),
        ],
    )
    def test_invalid_inputs(self, capsys, argv):
        code, doc = run_cli(capsys, *argv)
        assert code == 64 and doc["status"] == "InvalidInput"


class TestDiscrete:
    def test_schur_value(self, capsys):
        code, doc = run_cli(capsys, "discrete", "2", "2")
        assert code == 0
        assert doc["payload"]["value"] == 5
        assert doc["payload"]["formula_mismatch"] is False

    def test_known_odd_case(self, capsys):
        code, doc = run_cli(capsys, "discrete", "2", "5")
        assert code == 0 and doc["payload"]["value"] == 13

    def test_cap_exhaustion_unproved(self, capsys):
        code, doc = run_cli(capsys, "discrete", "3", "3", "--max-n", "5")
        assert code == 2 and doc["status"] == "Unproved"
        assert doc["payload"]["value"] is None

    def test_scan_records(self, capsys):
        code, doc = run_cli(capsys, "discrete", "2", "2", "--max-n", "6", "--scan")
        assert code == 0
        assert doc["payload"]["scan"] == [
            {"n": n, "colorable": n <= 4} for n in range(1, 7)
        ]

    def test_oracle_mode(self, capsys):
        code, doc = run_cli(capsys, "discrete", "3", "4", "--no-propagation")
        assert code == 0 and doc["payload"]["value"] == 14
        _, fast = run_cli(capsys, "discrete", "3", "4")
        assert (
            doc["payload"]["stats"]["nodes_explored"]
            > fast["payload"]["stats"]["nodes_explored"]
        )


class TestColoringPipeline:
    def test_round_trip_across_range(self, capsys, tmp_path):
        for k in range(2, 11):
            for l in range(k, 11):
                path = tmp_path / f"c{k}{l}.json"
                code, doc = run_cli(capsys, "lower-bound", str(k), str(l), "--out", str(path))
                assert code == 0 and doc["payload"]["verdict"] == "Valid"
                code, doc = run_cli(capsys, "verify-coloring", str(k), str(l), "--file", str(path))
                assert code == 0 and doc["status"] == "Ok"

    def test_scaled_construction(self, capsys):
        code, doc = run_cli(capsys, "lower-bound", "3", "3", "--gamma", "1/2")
        assert code == 0
        assert doc["payload"]["coloring"]["red"] == [
            ["1/2", "3/2", "[)"], ["9/2", "11/2", "[)"]
        ]
        assert doc["payload"]["coloring"]["blue"] == [["3/2", "9/2", "[)"]]

    def test_boundary_witnesses_in_payload(self, capsys):
        code, doc = run_cli(capsys, "lower-bound", "2", "3")
        witnesses = doc["payload"]["boundary_witnesses"]
        assert witnesses["red"] == {"color": "red", "left": [["1", 1], ["6", 1]], "x0": "7"}
        assert witnesses["blue"] == {"color": "blue", "left": [["2", 2], ["3", 1]], "x0": "7"}

    def test_all_blue_interval_found_out(self, capsys, tmp_path):
        path = tmp_path / "allblue.json"
        path.write_text(json.dumps({
            "gamma": "1", "end": "7", "end_inclusive": True,
            "red": [], "blue": [["1", "7", "[]"]],
        }))
        code, doc = run_cli(capsys, "verify-coloring", "2", "3", "--file", str(path))
        assert code == 1 and doc["status"] == "WitnessFound"
        witness = doc["payload"]["witness"]
        assert witness["color"] == "blue"

    def test_overlapping_classes_rejected(self, capsys, tmp_path):
        path = tmp_path / "overlap.json"
        path.write_text(json.dumps({
            "gamma": "1", "end": "7", "end_inclusive": False,
            "red": [["1", "3", "[)"]], "blue": [["2", "7", "[)"]],
        }))
        code, doc = run_cli(capsys, "verify-coloring", "2", "3", "--file", str(path))
        assert code == 64 and doc["status"] == "InvalidInput"

    def test_missing_file(self, capsys):
        code, doc = run_cli(capsys, "verify-coloring", "2", "3", "--file", "/no/such/file")
        assert code == 64


class TestCertificatePipeline:
    def test_emit_then_verify(self, capsys, tmp_path):
        for k, l, end in ((2, 4, "9"), (2, 5, "11"), (3, 3, "11"), (3, 4, "14")):
            path = tmp_path / f"cert{k}{l}.json"
            code, doc = run_cli(capsys, "certify-upper", str(k), str(l), "--out", str(path))
            assert code == 0
            assert doc["payload"]["domain_end"] == end
            code, doc = run_cli(capsys, "verify-certificate", "--file", str(path))
            assert code == 0 and doc["payload"]["verified"] is True

    def test_file_round_trip_is_bit_identical(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        run_cli(capsys, "certify-upper", "3", "4", "--out", str(path))
        first = path.read_bytes()
        doc = json.loads(first)
        assert (canonical_json(doc) + "\n").encode() == first

    def test_unit_grid_unproved_once_values_split(self, capsys):
        # discrete 11 > continuous 9 at (2,4): integers cannot refute
        code, doc = run_cli(capsys, "certify-upper", "2", "4", "--grid-denominator", "1")
        assert code == 2 and doc["status"] == "Unproved"
        assert doc["payload"]["branch"] == "red"

    def test_unit_grid_closes_where_values_coincide(self, capsys):
        # at (2,3) the discrete and continuous values are both 7, so the
        # integer grid refutes and no half-steps are needed
        code, doc = run_cli(capsys, "certify-upper", "2", "3", "--grid-denominator", "1")
        assert code == 0
        assert doc["payload"]["points_used"] == ["1", "2", "3", "4", "5", "6", "7"]

    def test_tampered_color_fails_with_path(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        run_cli(capsys, "certify-upper", "2", "3", "--out", str(path))
        doc = json.loads(path.read_text())
        doc["root"][0]["steps"][0]["forced"] = "red"
        path.write_text(canonical_json(doc))
        code, out = run_cli(capsys, "verify-certificate", "--file", str(path))
        assert code == 1 and out["status"] == "WitnessFound"
        assert out["payload"]["failure"]["path"] == ["1=red"]
        assert out["payload"]["failure"]["step_index"] == 0

    def test_arity_mismatch_is_invalid_input(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        run_cli(capsys, "certify-upper", "2", "3", "--out", str(path))
        doc = json.loads(path.read_text())
        doc["spec"]["l"] = 4
        path.write_text(canonical_json(doc))
        code, out = run_cli(capsys, "verify-certificate", "--file", str(path))
        assert code == 64 and out["status"] == "InvalidInput"


class TestReproduce:
    def test_quick_profile_passes(self, capsys):
        code, doc = run_cli(capsys, "reproduce")
        assert code == 0 and doc["payload"]["all_ok"] is True
        assert len(doc["payload"]["checks"]) > 30


class TestProcessLevel:
    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "offrado", "formula", "2", "2", "--mode", "discrete"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["payload"]["value"] == "5"

    def test_thread_env_accepted(self):
        for value in ("0", "1", "8"):
            proc = subprocess.run(
                [sys.executable, "-m", "offrado", "formula", "2", "2"],
                capture_output=True, text=True, env={"PATH": "/usr/bin:/bin", "RADO_THREADS": value},
            )
            assert proc.returncode == 0

    def test_invalid_thread_env_warns_on_stderr(self):
        proc = subprocess.run(
            [sys.executable, "-m", "offrado", "formula", "2", "2"],
            capture_output=True, text=True, env={"PATH": "/usr/bin:/bin", "RADO_THREADS": "many"},
        )
        assert proc.returncode == 0
        assert "RADO_THREADS" in proc.stderr
        json.loads(proc.stdout)  # stdout still a single clean document
