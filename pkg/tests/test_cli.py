"""Command line behavior: payload shapes, exit codes, determinism."""

import json

import numpy as np
import pytest

from trion.cli import main

FAST = ["--nmax", "6"]


def run_json(tmp_path, name, argv):
    out = tmp_path / f"{name}.json"
    code = main(argv + ["--json", str(out)])
    assert code == 0
    return json.loads(out.read_text())


class TestSpectrum:
    def test_payload_structure(self, tmp_path):
        payload = run_json(
            tmp_path, "spec", ["spectrum", "--lmax", "1"] + FAST
        )
        assert payload["command"] == "spectrum"
        assert payload["units"] == "hbar_omega"
        assert payload["config"]["n_max"] == 6
        assert [0, -1] in payload["nonexistent"]
        # The symmetric 1+ combination first appears at eight quanta,
        # so at this cutoff the series is reported as nonexistent.
        assert [1, 1] in payload["nonexistent"]
        terms = {row["term"] for row in payload["rows"]}
        assert terms == {"0+", "1-"}
        for row in payload["rows"]:
            assert row["energy"] > 0
            assert row["r_rms"] > 0

    def test_ground_shift(self, tmp_path):
        payload = run_json(
            tmp_path,
            "shifted",
            ["spectrum", "--lmax", "1", "--shift-ground"] + FAST,
        )
        assert payload["shifted"] is True
        assert min(row["energy"] for row in payload["rows"]) == 0.0

    def test_deterministic_output(self, tmp_path):
        argv = ["spectrum", "--lmax", "1"] + FAST
        first = tmp_path / "a.json"
        second = tmp_path / "b.json"
        assert main(argv + ["--json", str(first)]) == 0
        assert main(argv + ["--json", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()


class TestWeights:
    def test_single_component_state(self, tmp_path):
        payload = run_json(
            tmp_path, "w", ["weights", "--state", "1-"] + FAST
        )
        assert payload["total"] == pytest.approx(1.0, abs=1e-6)
        rows = {row["q"]: row for row in payload["rows"]}
        assert rows[1]["weight"] == pytest.approx(1.0, abs=1e-6)
        assert rows[1]["allowed"] is True
        assert rows[0]["allowed"] is False

    def test_state_block(self, tmp_path):
        payload = run_json(
            tmp_path, "wstate", ["weights", "--state", "1-"] + FAST
        )
        state = payload["state"]
        assert state["term"] == "1-"
        assert state["index"] == 1
        assert state["gamma"] > 0


class TestGrids:
    def test_density_csv_round_trip(self, tmp_path):
        csv_path = tmp_path / "rho.csv"
        payload = run_json(
            tmp_path,
            "rho",
            [
                "density1",
                "--state", "0+",
                "--r3-points", "9",
                "--theta-points", "7",
                "--csv", str(csv_path),
            ]
            + FAST,
        )
        assert payload["norm"] == pytest.approx(1.0, abs=1e-6)
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "# trion density1"
        assert lines[1] == f"# config_hash={payload['config_hash']}"
        meta = [line for line in lines if line.startswith("#")]
        assert "# axis1=r3" in meta
        assert "# axis2=theta3_deg" in meta
        data = [line for line in lines if not line.startswith("#")]
        header = data[0].split(",")
        assert header[0] == "r3\\theta3_deg"
        assert len(header) == 8
        assert len(data) == 10
        matrix = np.array(
            [[float(v) for v in line.split(",")[1:]] for line in data[1:]]
        )
        # L = 0 densities cannot depend on the polar angle.
        assert np.ptp(matrix, axis=1) == pytest.approx(0.0, abs=1e-12)

    def test_shape_payload(self, tmp_path):
        csv_path = tmp_path / "shape.csv"
        payload = run_json(
            tmp_path,
            "shape",
            [
                "shape",
                "--state", "0+",
                "--phi-points", "11",
                "--ratio-points", "9",
                "--csv", str(csv_path),
            ]
            + FAST,
        )
        assert payload["rt_value"] > 0
        # rt_value is evaluated exactly at the equilateral point, the
        # maximum only over the coarse grid, so allow a small excess.
        assert payload["max_value"] >= 0.95 * payload["rt_value"]
        assert len(payload["contour_levels"]) == 10
        assert payload["ist_peak_apex_deg"] > 0
        lines = csv_path.read_text().splitlines()
        data = [line for line in lines if not line.startswith("#")]
        assert len(data) == 12  # header plus one row per phi value


class TestClassifyAndGeometry:
    def test_classify_groups(self, tmp_path):
        payload = run_json(
            tmp_path,
            "cls",
            ["classify", "--statistics", "fermions", "--lmax", "2"] + FAST,
        )
        rows = {row["term"]: row for row in payload["rows"]}
        assert rows["0+"]["group"] == 3
        assert rows["1+"]["group"] == 1
        assert rows["0-"]["exists"] is False
        assert rows["0-"]["group"] is None

    def test_geometry_payload(self, tmp_path):
        payload = run_json(tmp_path, "geo", ["geometry", "--points", "21"])
        assert len(payload["phi_deg"]) == 21
        assert payload["points"]["RT"] == [0.0, pytest.approx(np.sqrt(3) / 2)]
        mid = len(payload["phi_deg"]) // 2
        assert payload["ist_lower"][mid] == pytest.approx(np.sqrt(3) / 2)


class TestConvergence:
    def test_rows_follow_cutoffs(self, tmp_path):
        payload = run_json(
            tmp_path,
            "conv",
            ["convergence", "--state", "0+", "--nmax", "4,6"],
        )
        assert [row["n_max"] for row in payload["rows"]] == [4, 6]
        energies = [row["energy"] for row in payload["rows"]]
        assert energies[1] <= energies[0]
        assert payload["config"]["n_max"] == 6


class TestFailureModes:
    def test_nonexistent_series_exit_code(self, capsys):
        assert main(["weights", "--state", "0-"] + FAST) == 3
        assert "error:" in capsys.readouterr().err

    def test_missing_table_exit_code(self, capsys):
        code = main(["spectrum", "--table", "/does/not/exist.dat"] + FAST)
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_state_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["weights", "--state", "2x"] + FAST)
        assert info.value.code == 2

    def test_unknown_interaction_exit_code(self, capsys):
        code = main(["spectrum", "--interaction", "Q"] + FAST)
        assert code == 2
        assert "error:" in capsys.readouterr().err
