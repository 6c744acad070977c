# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for the command line."""

import json
import math

import pytest

from stochastic_sea.cli import ssea
from stochastic_sea.io import read_csv_rows


def _invoke(runner, tmp_path, *args, **kwargs):
    out = tmp_path / "out"
    result = runner.invoke(
        ssea, ["-o", str(out), *args], catch_exceptions=False, **kwargs
    )
    return result, out


def _load(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_cantor_middle_thirds(runner, tmp_path):
    """Thickness one and dimension ``log 2 / log 3``."""
    result, out = _invoke(
        runner, tmp_path, "cantor", "--builtin", "middle-thirds", "--depth", "6"
    )
    assert result.exit_code == 0
    data = _load(out / "cantor.json")
    assert data["thickness"]["tauL"] == pytest.approx(1.0)
    assert data["thickness"]["tauR"] == pytest.approx(1.0)
    exact = data["bounds"]["exact"]["d"]
    assert exact == pytest.approx(math.log(2) / math.log(3), abs=1e-10)
    assert list(data)[0] == "header"


def test_cantor_affine(runner, tmp_path):
    """Affine ratios give the Moran dimension."""
    result, out = _invoke(
        runner, tmp_path, "cantor", "--affine", "0.5", "0.2", "--depth", "6"
    )
    assert result.exit_code == 0
    data = _load(out / "cantor.json")
    d = data["bounds"]["exact"]["d"]
    assert 0.5**d + 0.2**d == pytest.approx(1.0, abs=1e-9)


def test_cantor_needs_one_source(runner, tmp_path):
    """Two sources are an input error."""
    result, _ = _invoke(
        runner, tmp_path,
        "cantor", "--builtin", "middle-thirds", "--affine", "0.3", "0.3",
    )
    assert result.exit_code == 2


def test_cantor_malformed_json(runner, tmp_path):
    """A malformed system file exits with code 2."""
    system = tmp_path / "system.json"
    system.write_text("{not json", encoding="utf-8")
    result, _ = _invoke(runner, tmp_path, "cantor", "--system", str(system))
    assert result.exit_code == 2


def test_cantor_from_file(runner, tmp_path, middle_thirds):
    """Systems round-trip through ``--system``."""
    system = tmp_path / "system.json"
    system.write_text(json.dumps(middle_thirds.to_dict()), encoding="utf-8")
    result, out = _invoke(
        runner, tmp_path, "cantor", "--system", str(system), "--depth", "5"
    )
    assert result.exit_code == 0
    assert _load(out / "cantor.json")["thickness"]["tauL"] == pytest.approx(1.0)


def test_splitting_refused(runner, tmp_path):
    """Too small ``h`` exits with the precision code."""
    result, _ = _invoke(runner, tmp_path, "splitting", "--h", "0.2")
    assert result.exit_code == 3


def test_synthetic_horseshoe(runner, tmp_path):
    """The affine model reports twice the middle-thirds dimension."""
    result, out = _invoke(
        runner, tmp_path, "horseshoe", "--synthetic", "affine", "--tau", "1", "1"
    )
    assert result.exit_code == 0
    data = _load(out / "horseshoe.json")
    assert data["total"] == pytest.approx(2 * math.log(2) / math.log(3), abs=1e-8)
    assert data["classF"]["ok"]


def test_islands_csv(runner, tmp_path):
    """Both fixed points at ``k = 0.3``."""
    result, out = _invoke(
        runner, tmp_path, "--emit-plot-data", "stdmap", "islands",
        "--k", "0.3", "--period", "1", "--grid", "4",
    )
    assert result.exit_code == 0
    text = (out / "islands.csv").read_text(encoding="utf-8")
    assert text.startswith("# config_hash=")
    rows = read_csv_rows(out / "islands.csv")
    assert sorted(r["class"] for r in rows) == ["elliptic", "saddle"]
    assert (out / "islands-plot.csv").exists()


def test_lyapunov_csv(runner, tmp_path):
    """One row per seed and method."""
    result, out = _invoke(
        runner, tmp_path, "--seed", "3", "stdmap", "lyapunov",
        "--k", "10", "--n", "1e3", "--seeds", "2", "--method", "qr",
    )
    assert result.exit_code == 0
    rows = read_csv_rows(out / "lyapunov.csv")
    assert [r["seed"] for r in rows] == ["3", "4"]
    assert all(float(r["value"]) > 2.0 for r in rows)


def test_lyapunov_bad_count(runner, tmp_path):
    """Fractional counts are refused."""
    result, _ = _invoke(
        runner, tmp_path, "stdmap", "lyapunov", "--k", "1", "--n", "2.5"
    )
    assert result.exit_code == 2


def test_model_scan(runner, tmp_path):
    """The model family has its tangency at ``k*``."""
    result, out = _invoke(
        runner, tmp_path, "stdmap", "scan", "--k", "6.5", "7.5",
        "--family", "model", "--k-star", "7.3", "--depth", "2", "--unfold",
    )
    assert result.exit_code == 0
    data = _load(out / "scan.json")
    assert data["tangencies"] == [pytest.approx(7.3, abs=1e-4)]
    assert data["unfolding"][0]["beta"] == pytest.approx(1.0, abs=1e-3)
    assert read_csv_rows(out / "scan.csv")


def test_scan_budget_exit_code(runner, tmp_path):
    """An exhausted budget exits with code 5 and keeps the partial tree."""
    result, out = _invoke(
        runner, tmp_path, "stdmap", "scan", "--k", "6.5", "7.5",
        "--family", "model", "--k-star", "7.3", "--steps", "16", "--budget", "17",
    )
    assert result.exit_code == 5
    assert _load(out / "scan.json")["evaluations"] == 17


def test_scan_family_needs_k_star(runner, tmp_path):
    """Synthetic families need their tangency parameter."""
    result, _ = _invoke(
        runner, tmp_path, "stdmap", "scan", "--k", "6.5", "7.5", "--family", "model"
    )
    assert result.exit_code == 2


def test_manifest(runner, tmp_path):
    """Every command leaves a manifest listing its outputs."""
    result, out = _invoke(
        runner, tmp_path, "cantor", "--builtin", "middle-fifths", "--depth", "4"
    )
    assert result.exit_code == 0
    manifest = _load(out / "manifest.json")
    assert manifest["command"] == "cantor"
    assert manifest["outputs"] == [str(out / "cantor.json")]
    assert manifest["finished"] >= manifest["started"]
    data = _load(out / "cantor.json")
    assert manifest["configHash"] == data["header"]["configHash"]


def test_config_file(runner, tmp_path):
    """TOML tables set the defaults of the commands."""
    config = tmp_path / "ssea.toml"
    config.write_text("[cantor]\ndepth = 4\n", encoding="utf-8")
    result, out = _invoke(
        runner, tmp_path,
        "--config", str(config), "cantor", "--builtin", "middle-thirds",
    )
    assert result.exit_code == 0
    data = _load(out / "cantor.json")
    assert data["thickness"]["depth"] == 4
    assert data["header"]["config"]["cantor"]["depth"] == 4


def test_config_errors(runner, tmp_path):
    """Unknown keys and bad values exit with code 2."""
    config = tmp_path / "ssea.toml"
    config.write_text("[cantor]\nwidth = 4\n", encoding="utf-8")
    result, _ = _invoke(
        runner, tmp_path,
        "--config", str(config), "cantor", "--builtin", "middle-thirds",
    )
    assert result.exit_code == 2

    result, _ = _invoke(
        runner, tmp_path,
        "cantor", "--builtin", "middle-thirds",
        env={"SSEA_RUN_JOBS": "many"},
    )
    assert result.exit_code == 2


def test_synthetic_horseshoe_cones(runner, tmp_path):
    """Diagonal branches keep cones at every aspect of the search."""
    result, out = _invoke(runner, tmp_path, "horseshoe", "--synthetic", "linear")
    assert result.exit_code == 0
    assert "No invariant cones" not in result.output
    assert _load(out / "horseshoe.json")["cones"]["interval"] is not None


def test_horseshoe_verdict_without_cones(runner, tmp_path, monkeypatch):
    """A search without a passing aspect turns the verdict yellow."""
    from stochastic_sea import cli
    from stochastic_sea.horseshoe import ConeReport, KappaSearch, synthetic_pipeline

    def without_cones(*args, **kwargs):
        result = synthetic_pipeline(*args, **kwargs)
        failing = ConeReport(1.0, 33, [0.5, 0.5], [2.0, 2.0], [3.0], [3.0])
        result.cones = KappaSearch([failing])
        return result

    monkeypatch.setattr(cli, "synthetic_pipeline", without_cones)
    result, out = _invoke(runner, tmp_path, "horseshoe", "--synthetic", "affine")
    assert result.exit_code == 0
    assert "No invariant cones at this kappa" in result.output
    assert "Class F" not in result.output
    assert _load(out / "horseshoe.json")["cones"]["interval"] is None


def test_density_without_chaotic_seed(runner, tmp_path):
    """A failed chaos filter is reported and recorded in the CSV."""
    env = {"SSEA_STDMAP_SEEDS": "3", "SSEA_STDMAP_FILTER_STEPS": "2000"}
    result, out = _invoke(
        runner, tmp_path, "stdmap", "density", "--k", "0.01", "--n", "2000",
        "--probes", "4", env=env,
    )
    assert result.exit_code == 0
    assert "Chaos filter" in result.output
    rows = read_csv_rows(out / "density.csv")
    assert rows[0]["chaotic_seed"] == "False"


def test_boxdim_without_chaotic_seed(runner, tmp_path):
    """Box counting needs chaotic seeds; the message names the filter."""
    env = {"SSEA_STDMAP_SEEDS": "3", "SSEA_STDMAP_FILTER_STEPS": "2000"}
    result, _ = _invoke(
        runner, tmp_path, "stdmap", "boxdim", "--k", "0.01", "--n", "1000", env=env
    )
    assert result.exit_code == 2
    assert "Chaos filter" in result.output
    assert "0.1" in result.output
