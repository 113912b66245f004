"""Tests for the command-line front end."""

import csv
import json
import math

import numpy as np
import pytest

from coshwell.cli import (
    EXIT_DISAGREE,
    EXIT_INVALID,
    EXIT_OK,
    main,
    parse_length_scale,
)

DEEP_ARGS = [
    "--geometry", "1d", "--v1", "-10000", "--v2", "5",
    "--lambda", "sqrt2", "--parity", "even",
]


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestParsing:
    def test_sqrt_tokens(self):
        assert parse_length_scale("sqrt2") == math.sqrt(2.0)
        assert parse_length_scale("sqrt3") == math.sqrt(3.0)
        assert parse_length_scale("1.75") == 1.75

    def test_bad_method_rejected(self):
        with pytest.raises(SystemExit):
            main(["spectrum", "--method", "magic"])


class TestSpectrumCommand:
    def test_deep_well_tra_first_row(self, tmp_path):
        out = tmp_path / "spec.csv"
        code = main(["spectrum", *DEEP_ARGS, "--method", "tra", "--n", "20",
                     "--output", str(out)])
        assert code == EXIT_OK
        rows = read_csv(out)
        assert abs(float(rows[0]["E_tra"]) - (-9945.09966135)) < 1e-6

    def test_closed_form_delegation(self, tmp_path):
        out = tmp_path / "cf.csv"
        code = main(["spectrum", "--geometry", "3d", "--v0", "10", "--v1", "-200",
                     "--v2", "0", "--lambda", "sqrt2", "--method", "closed_form",
                     "--levels", "5", "--output", str(out)])
        assert code == EXIT_OK
        rows = read_csv(out)
        assert abs(float(rows[0]["E_closed_form"]) - (-109.66698906569547)) < 1e-9

    def test_invalid_input_names_constraint(self, tmp_path, capsys):
        code = main(["spectrum", "--geometry", "3d", "--v0", "0", "--v1", "0",
                     "--v2", "0", "--lambda", "2", "--method", "tra"])
        assert code == EXIT_INVALID
        assert "normalizable" in capsys.readouterr().err

    def test_json_output(self, tmp_path):
        out = tmp_path / "spec.json"
        code = main(["spectrum", *DEEP_ARGS, "--method", "tra", "--n", "20",
                     "--levels", "3", "--format", "json", "--output", str(out)])
        assert code == EXIT_OK
        payload = json.loads(out.read_text())
        assert len(payload) == 3
        assert abs(payload[0]["E_tra"] + 9945.09966135) < 1e-6

    def test_determinism_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["spectrum", *DEEP_ARGS, "--method", "tra", "--n", "30"]
        assert main([*argv, "--output", str(a)]) == EXIT_OK
        assert main([*argv, "--output", str(b)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()

    def test_config_round_trip(self, tmp_path):
        direct = tmp_path / "direct.csv"
        dumped = tmp_path / "config.json"
        replayed = tmp_path / "replayed.csv"
        argv = ["spectrum", *DEEP_ARGS, "--method", "tra", "--n", "25"]
        assert main([*argv, "--output", str(direct), "--dump-config", str(dumped)]) == EXIT_OK
        cfg = json.loads(dumped.read_text())
        assert cfg["method"] == "tra" and cfg["n"] == 25
        assert main(["spectrum", "--config", str(dumped), "--output", str(replayed)]) == EXIT_OK
        direct_rows = read_csv(direct)
        replay_rows = read_csv(replayed)
        assert direct_rows == replay_rows


class TestTableCommand:
    @pytest.mark.parametrize("table_id", ["1", "2", "3", "4", "5"])
    def test_reproduction_exits_zero(self, table_id, tmp_path):
        out = tmp_path / "table.csv"
        assert main(["table", table_id, "--output", str(out)]) == EXIT_OK
        rows = read_csv(out)
        assert len(rows) == 10
        assert all(float(r["deviation"]) < 1e-4 for r in rows)

    def test_reduced_size_shows_drift(self, tmp_path):
        out = tmp_path / "drift.csv"
        main(["table", "5", "--sizes", "10", "--output", str(out)])
        rows = read_csv(out)
        assert 1.5e-3 < float(rows[9]["deviation"]) < 2.1e-3

    def test_unknown_table_rejected(self):
        with pytest.raises(SystemExit):
            main(["table", "7"])

    def test_json_table_output(self, tmp_path):
        out = tmp_path / "table.json"
        assert main(["table", "5", "--format", "json", "--output", str(out)]) == EXIT_OK
        payload = json.loads(out.read_text())
        assert len(payload) == 10
        assert payload[0]["reference"] == -9945.09966135


class TestCurvesCommand:
    def test_potential_series_for_each_ell(self, tmp_path):
        out = tmp_path / "pot.csv"
        assert main(["curves", "potential", "--output", str(out)]) == EXIT_OK
        rows = read_csv(out)
        assert {r["series"] for r in rows} == {"ell=0", "ell=1", "ell=2", "ell=3"}

    def test_one_dimensional_series(self, tmp_path):
        out = tmp_path / "pot1d.csv"
        assert main(["curves", "potential", "--geometry", "1d",
                     "--output", str(out)]) == EXIT_OK
        rows = read_csv(out)
        assert {r["series"] for r in rows} == {"v=2", "v=4", "v=6"}

    def test_explicit_strength_gives_single_series(self, tmp_path):
        out = tmp_path / "pot1d.csv"
        assert main(["curves", "potential", "--geometry", "1d", "--v1", "-30",
                     "--v2", "2", "--output", str(out)]) == EXIT_OK
        rows = read_csv(out)
        assert {r["series"] for r in rows} == {"v1=-30"}

    def test_wavefunction_states_and_nodes(self, tmp_path, capsys):
        out = tmp_path / "wf.csv"
        assert main(["curves", "wavefunction", "--points", "200",
                     "--output", str(out)]) == EXIT_OK
        rows = read_csv(out)
        assert {r["series"] for r in rows} == {"n=0", "n=1", "n=2", "n=3"}
        err = capsys.readouterr().err
        for state, nodes in enumerate([0, 1, 2, 3]):
            assert f"state {state}:" in err and f"nodes={nodes}" in err

    def test_centrifugal_error_slope(self, tmp_path, capsys):
        out = tmp_path / "cf.csv"
        assert main(["curves", "centrifugal_error", "--points", "25",
                     "--output", str(out)]) == EXIT_OK
        err = capsys.readouterr().err
        slope = float(err.split("slope:")[1].strip())
        assert abs(slope - 6.0) < 0.2
        rows = read_csv(out)
        assert len(rows) == 25


class TestCompareCommand:
    def test_three_way_agreement_on_the_deep_well(self, tmp_path):
        out = tmp_path / "cmp.csv"
        code = main(["compare", *DEEP_ARGS, "--methods", "tra,hdm,oracle",
                     "--sizes", "60,80,100", "--grid-points", "16001",
                     "--x-min", "-4", "--x-max", "4", "--output", str(out)])
        assert code == EXIT_OK
        rows = read_csv(out)
        assert all(float(r["max_spread"]) < 1e-5 for r in rows)

    def test_disagreement_exit_code(self, tmp_path, capsys):
        code = main(["compare", *DEEP_ARGS, "--methods", "tra,hdm",
                     "--sizes", "60,80,100", "--tolerance", "1e-14",
                     "--output", str(tmp_path / "cmp.csv")])
        assert code == EXIT_DISAGREE
        assert "disagree" in capsys.readouterr().err

    def test_single_method_rejected(self, capsys):
        assert main(["compare", *DEEP_ARGS, "--methods", "tra"]) == EXIT_INVALID

    def test_closed_form_against_oracle(self, tmp_path):
        out = tmp_path / "cf.csv"
        code = main(["compare", "--geometry", "3d", "--v0", "10", "--v1", "-200",
                     "--v2", "0", "--lambda", "sqrt2",
                     "--methods", "closed_form,oracle",
                     "--levels", "1", "--tolerance", "1e-6",
                     "--grid-points", "8001", "--x-min", "0", "--x-max", "4",
                     "--output", str(out)])
        assert code == EXIT_OK
        rows = read_csv(out)
        assert float(rows[0]["max_spread"]) < 1e-6
