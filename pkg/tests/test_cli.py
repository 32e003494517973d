import filecmp
import json
import math
import os
import shutil

import numpy as np
import pytest

from conftest import single_axis_chord_oracle

from modalid.cli import main

BENT_CX = "0.6,-0.4,0.2"
BENT_CY = "-0.3,0.5,0.1"


def run_cli(*args):
    return main(list(args))


@pytest.fixture
def bent_target_file(tmp_path):
    path = tmp_path / "target.json"
    assert run_cli(
        "target", "synth", f"--cx={BENT_CX}", f"--cy={BENT_CY}", "--out", str(path)
    ) == 0
    return path


class TestSimulate:
    def test_straight_geometry(self, tmp_path):
        out = tmp_path / "geom.json"
        code = run_cli("simulate", "--cx", "0,0,0", "--cy", "0,0,0", "--out", str(out))
        assert code == 0
        doc = json.loads(out.read_text())
        points = np.array(doc["points"])
        assert points.shape == (101, 3)
        assert np.max(np.abs(points[:, :2])) == 0.0
        assert abs(points[-1][2] - 1.0) <= 1e-15
        assert doc["tcp_vector"] == [0.0, 0.0, 1.0]
        assert len(doc["frames"]) == 101

    def test_matches_oracle_points(self, tmp_path):
        out = tmp_path / "geom.json"
        assert run_cli("simulate", "--cx", "1,0,0", "--cy", "0,0,0", "--out", str(out)) == 0
        points = np.array(json.loads(out.read_text())["points"])
        expected = single_axis_chord_oracle((1.0, 0.0, 0.0), 1.0, 1.0, 101)
        assert np.max(np.abs(points - expected)) <= 1e-9

    def test_scale_doubles_coordinates(self, tmp_path):
        one = tmp_path / "one.json"
        two = tmp_path / "two.json"
        args = ["simulate", f"--cx={BENT_CX}", f"--cy={BENT_CY}"]
        assert run_cli(*args, "--scale", "1", "--out", str(one)) == 0
        assert run_cli(*args, "--scale", "2", "--out", str(two)) == 0
        p1 = np.array(json.loads(one.read_text())["points"])
        p2 = np.array(json.loads(two.read_text())["points"])
        assert np.array_equal(p2, p1 * 2.0)

    def test_validation_error_exits_2(self, tmp_path, capsys):
        code = run_cli(
            "simulate", "--cx", "0,0,0", "--cy", "0,0,0",
            "--length", "0", "--out", str(tmp_path / "x.json"),
        )
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_bad_coefficient_count_exits_2(self, tmp_path):
        code = run_cli("simulate", "--cx", "0,0", "--cy", "0,0,0", "--out", str(tmp_path / "x"))
        assert code == 2


class TestTarget:
    def test_synth_self_consistency(self, bent_target_file, capsys):
        code = run_cli(
            "eval", "--target", str(bent_target_file), f"--cx={BENT_CX}", f"--cy={BENT_CY}"
        )
        assert code == 0
        assert capsys.readouterr().out.strip().splitlines()[-1] == "0 0"

    def test_import_structured_round_trip(self, bent_target_file, tmp_path, capsys):
        imported = tmp_path / "imported.json"
        code = run_cli(
            "target", "import", "--in", str(bent_target_file), "--out", str(imported)
        )
        assert code == 0
        capsys.readouterr()
        run_cli("eval", "--target", str(bent_target_file), "--cx", "1,0,0", "--cy", "0,1,0")
        first = capsys.readouterr().out
        run_cli("eval", "--target", str(imported), "--cx", "1,0,0", "--cy", "0,1,0")
        second = capsys.readouterr().out
        assert first == second

    def test_import_csv(self, bent_target_file, tmp_path, capsys):
        doc = json.loads(bent_target_file.read_text())
        csv_path = tmp_path / "points.csv"
        rows = doc["division_points"] + [doc["tcp_vector"]]
        csv_path.write_text("\n".join(",".join(repr(v) for v in row) for row in rows) + "\n")
        imported = tmp_path / "imported.json"
        code = run_cli(
            "target", "import", "--in", str(csv_path),
            "--length", "1", "--scale", "1", "--out", str(imported),
        )
        assert code == 0
        capsys.readouterr()
        assert run_cli(
            "eval", "--target", str(imported), f"--cx={BENT_CX}", f"--cy={BENT_CY}"
        ) == 0
        assert capsys.readouterr().out.strip().splitlines()[-1] == "0 0"

    def test_import_csv_wrong_row_count_exits_2(self, tmp_path, capsys):
        csv_path = tmp_path / "short.csv"
        # 8 rows cannot satisfy n = 8 (needs 9 divisions + 1 tcp row)
        csv_path.write_text("\n".join("0,0," + repr(i / 7) for i in range(8)) + "\n")
        code = run_cli(
            "target", "import", "--in", str(csv_path), "--n-divisions", "8",
            "--length", "1", "--scale", "1", "--out", str(tmp_path / "x.json"),
        )
        assert code == 2
        err = capsys.readouterr().err
        assert "n = 8" in err

    def test_import_csv_without_length_exits_2(self, tmp_path):
        csv_path = tmp_path / "points.csv"
        csv_path.write_text("0,0,0\n0,0,1\n0,0,1\n")
        code = run_cli(
            "target", "import", "--in", str(csv_path), "--out", str(tmp_path / "x.json")
        )
        assert code == 2

    def test_missing_input_exits_3(self, tmp_path):
        code = run_cli(
            "target", "import", "--in", str(tmp_path / "absent.csv"),
            "--out", str(tmp_path / "x.json"),
        )
        assert code == 3


class TestEval:
    def test_antipodal_tips_score_four(self, tmp_path, capsys):
        straight = tmp_path / "straight.json"
        assert run_cli("target", "synth", "--cx", "0,0,0", "--cy", "0,0,0",
                       "--out", str(straight)) == 0
        doc = json.loads(straight.read_text())
        # flip the target upside down: divisions along -z, tcp (0,0,-1)
        doc["division_points"] = [[p[0], p[1], -p[2]] for p in doc["division_points"]]
        doc["tcp_vector"] = [0.0, 0.0, -1.0]
        doc.pop("ground_truth", None)
        flipped = tmp_path / "flipped.json"
        flipped.write_text(json.dumps(doc))
        capsys.readouterr()
        assert run_cli("eval", "--target", str(flipped), "--cx", "0,0,0", "--cy", "0,0,0") == 0
        out = capsys.readouterr().out.strip().splitlines()[-1]
        mse1, mse2 = out.split()
        assert float(mse2) == 4.0
        assert float(mse1) > 0.0

    def test_geometry_eval_matches_coefficient_eval(self, bent_target_file, tmp_path, capsys):
        geom = tmp_path / "geom.json"
        assert run_cli("simulate", "--cx", "0.9,0.1,-0.5", "--cy", "0.2,-0.8,0.3",
                       "--out", str(geom)) == 0
        capsys.readouterr()
        run_cli("eval", "--target", str(bent_target_file), "--geometry", str(geom))
        via_geometry = capsys.readouterr().out.strip().splitlines()[-1]
        run_cli("eval", "--target", str(bent_target_file),
                "--cx", "0.9,0.1,-0.5", "--cy", "0.2,-0.8,0.3")
        via_coeffs = capsys.readouterr().out.strip().splitlines()[-1]
        assert via_geometry == via_coeffs

    def test_geometry_with_too_few_samples_exits_2(self, bent_target_file, tmp_path):
        geom = tmp_path / "tiny.json"
        assert run_cli("simulate", "--cx", "0,0,0", "--cy", "0,0,0",
                       "--samples", "5", "--out", str(geom)) == 0
        code = run_cli("eval", "--target", str(bent_target_file), "--geometry", str(geom))
        assert code == 2

    def test_missing_candidate_exits_2(self, bent_target_file):
        assert run_cli("eval", "--target", str(bent_target_file)) == 2

    def test_seventeen_digit_output(self, bent_target_file, capsys):
        run_cli("eval", "--target", str(bent_target_file), "--cx", "1,0,0", "--cy", "0,0,0")
        out = capsys.readouterr().out.strip().splitlines()[-1]
        mse1, mse2 = (float(v) for v in out.split())
        assert math.isfinite(mse1) and math.isfinite(mse2)
        # enough digits to round-trip exactly
        assert out == f"{mse1:.17g} {mse2:.17g}"


class TestIdentify:
    def _identify(self, target, out, *extra):
        return run_cli("identify", "--target", str(target), "--out", str(out), *extra)

    def test_output_tree(self, bent_target_file, tmp_path, capsys):
        out = tmp_path / "run"
        assert self._identify(bent_target_file, out, "--seed", "42") == 0
        stdout = capsys.readouterr().out
        assert "pareto front" in stdout
        assert "best individual" in stdout
        expected = {
            "manifest.json", "config.json", "result.json",
            "generations.csv", "individuals.csv",
            "std_mse1.svg", "std_mse2.svg", "mean_mse1.svg", "mean_mse2.svg",
            "fitness_scatter.svg",
        }
        assert set(os.listdir(out)) == expected

    def test_byte_identical_reruns_across_thread_counts(
        self, bent_target_file, tmp_path, monkeypatch
    ):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
        out = tmp_path / "run"
        snap = tmp_path / "snap"

        monkeypatch.setenv("MODALID_THREADS", "0")
        assert self._identify(bent_target_file, out, "--seed", "42") == 0
        shutil.copytree(out, snap)
        shutil.rmtree(out)

        monkeypatch.setenv("MODALID_THREADS", "4")
        assert self._identify(bent_target_file, out, "--seed", "42") == 0

        match, mismatch, errors = filecmp.cmpfiles(
            out, snap, os.listdir(snap), shallow=False
        )
        assert not mismatch and not errors
        assert set(match) == set(os.listdir(out))

    def test_single_generation_run(self, bent_target_file, tmp_path):
        out = tmp_path / "run"
        assert self._identify(bent_target_file, out, "--seed", "0", "--generations", "1") == 0
        with open(out / "generations.csv") as fh:
            assert len(fh.readlines()) == 2  # header + one row

    def test_config_file_with_flag_override(self, bent_target_file, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({"generation_count": 3, "seed": 5, "generation_size": 10}))
        out = tmp_path / "run"
        assert self._identify(bent_target_file, out, "--config", str(cfg),
                              "--generations", "2") == 0
        echo = json.loads((out / "config.json").read_text())
        assert echo["generation_count"] == 2  # flag wins
        assert echo["seed"] == 5
        assert echo["generation_size"] == 10

    def test_unknown_config_field_exits_2(self, bent_target_file, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({"generation_cnt": 3}))
        assert self._identify(bent_target_file, tmp_path / "run", "--config", str(cfg)) == 2

    def test_missing_target_exits_3(self, tmp_path):
        assert self._identify(tmp_path / "absent.json", tmp_path / "run") == 3

    def test_manifest_references_inputs(self, bent_target_file, tmp_path):
        out = tmp_path / "run"
        assert self._identify(bent_target_file, out, "--seed", "9") == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["target"] == str(bent_target_file)
        assert manifest["seed"] == 9
        assert len(manifest["target_sha256"]) == 64
        result = json.loads((out / "result.json").read_text())
        assert len(result["archive"]) == 200
        assert result["pareto_front"]


class TestParser:
    def test_no_command_exits_2(self):
        assert run_cli() == 2

    def test_help_exits_0(self):
        assert run_cli("--help") == 0

    def test_env_threads_validation(self, bent_target_file, tmp_path, monkeypatch):
        monkeypatch.setenv("MODALID_THREADS", "banana")
        code = run_cli("identify", "--target", str(bent_target_file),
                       "--out", str(tmp_path / "run"))
        assert code == 2
