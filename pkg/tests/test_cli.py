"""Console entry points: exit codes, artifacts, and overrides."""

import json
import subprocess
import sys

import numpy as np
import pytest

from torus_games.cli import coalesce_main, simulate_main, torus_games_main

pytestmark = pytest.mark.filterwarnings(
    "ignore::torus_games.errors.HorizonTooSmallWarning"
)


def write_mixing_spec(path, t_factor=1.0, reps=20000):
    path.write_text(json.dumps({
        "kind": "walk_mixing",
        "replicates": reps,
        "seed": 9,
        "parameters": {"d": 3, "L": 8, "kernel": "nn", "t_factor": t_factor,
                       "thresholds": {"max_tv_adjusted": 0.05}},
    }))


class TestTorusGames:
    def test_pass_run_writes_report(self, tmp_path, capsys):
        spec = tmp_path / "spec.json"
        write_mixing_spec(spec)
        out = tmp_path / "out"
        rc = torus_games_main(["walk_mixing", "--spec", str(spec),
                               "--out", str(out)])
        assert rc == 0
        text = capsys.readouterr().out
        assert "[PASS]" in text and "[FAIL]" not in text
        for name in ("summary.json", "manifest.json", "tv.csv"):
            assert (out / name).exists()

    def test_kind_mismatch_exits_2(self, tmp_path, capsys):
        spec = tmp_path / "spec.json"
        write_mixing_spec(spec)
        rc = torus_games_main(["census_decay", "--spec", str(spec),
                               "--out", str(tmp_path / "out")])
        assert rc == 2
        assert "walk_mixing" in capsys.readouterr().err

    def test_failing_criterion_exits_1(self, tmp_path, capsys):
        # far below the mixing time the TV criterion must fail
        spec = tmp_path / "spec.json"
        write_mixing_spec(spec, t_factor=0.02)
        rc = torus_games_main(["walk_mixing", "--spec", str(spec),
                               "--out", str(tmp_path / "out")])
        assert rc == 1
        assert "[FAIL]" in capsys.readouterr().out

    def test_reps_seed_overrides_reach_manifest(self, tmp_path):
        spec = tmp_path / "spec.json"
        write_mixing_spec(spec)
        out = tmp_path / "out"
        rc = torus_games_main(["walk_mixing", "--spec", str(spec),
                               "--out", str(out), "--reps", "5e3",
                               "--seed", "3"])
        assert rc == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert (manifest["replicates"], manifest["seed"]) == (5000, 3)


class TestCoalesce:
    def test_estimates_printed_and_exported(self, tmp_path, capsys):
        out = tmp_path / "coal.json"
        rc = coalesce_main(["--kernel", "nn", "--d", "3", "--horizon", "50",
                            "--reps", "2000", "--seed", "1",
                            "--out", str(out)])
        assert rc == 0
        text = capsys.readouterr().out
        assert "pair non-coalescence" in text
        assert "kappa 5.99" in text and "sigma_db 1.4" in text
        records = json.loads(out.read_text())
        names = {r["quantity"] for r in records}
        assert {"pair_noncoalescence", "bd_p1", "bd_p2", "db_pbar1",
                "db_pbar2", "db_pair_two_starts"} <= names
        pair = next(r for r in records
                    if r["quantity"] == "pair_noncoalescence")
        assert 0.5 < pair["value"] < 0.9
        assert pair["std_error"] > 0


class TestSimulate:
    def test_densities_and_config_echo(self, tmp_path, capsys):
        run = tmp_path / "run.json"
        run.write_text(json.dumps({
            "L": 4, "d": 3,
            "kernel": {"preset": "nn", "d": 3},
            "game": {"n": 2, "rows": [[0.0, 0.0], [0.0, 0.0]]},
            "rule": "BD", "w": 0.0, "mu": 0.01,
            "t_end": 5.0, "record_times": [1.0, 2.0, 3.0, 4.0, 5.0],
            "seed": 3,
            "initial": {"kind": "product", "u0": [0.5, 0.5]},
        }))
        out = tmp_path / "out"
        rc = simulate_main(["--config", str(run), "--reps", "4",
                            "--out", str(out)])
        assert rc == 0
        lines = (out / "densities.csv").read_text().splitlines()
        assert lines[0] == "rep,t_process,u_0,u_1"
        assert len(lines) == 1 + 4 * 5
        body = np.array([l.split(",") for l in lines[1:]], dtype=float)
        assert np.allclose(body[:, 2] + body[:, 3], 1.0)
        echo = json.loads((out / "config.json").read_text())
        assert echo["replicates"] == 4
        assert echo["L"] == 4 and echo["rule"] == "BD"
        assert "config_id" in echo
        assert "config" in capsys.readouterr().out

    def test_seed_override_changes_output(self, tmp_path):
        run = tmp_path / "run.json"
        run.write_text(json.dumps({
            "L": 4, "d": 3, "kernel": {"preset": "nn", "d": 3},
            "game": {"n": 2, "rows": [[0.0, 0.0], [0.0, 0.0]]},
            "rule": "BD", "w": 0.0, "mu": 0.05, "t_end": 10.0,
            "record_times": [10.0], "seed": 3,
            "initial": {"kind": "product", "u0": [0.5, 0.5]},
        }))
        texts = []
        for tag, seed_args in (("a", []), ("b", ["--seed", "4"])):
            out = tmp_path / tag
            assert simulate_main(["--config", str(run), "--reps", "6",
                                  "--out", str(out)] + seed_args) == 0
            texts.append((out / "densities.csv").read_text())
        assert texts[0] != texts[1]


class TestConsoleScripts:
    @pytest.mark.parametrize("prog", ["torus-games", "coalesce", "simulate"])
    def test_help_runs(self, prog):
        res = subprocess.run([prog, "--help"], capture_output=True, text=True)
        assert res.returncode == 0
        assert prog in res.stdout
