# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for the run configuration and output files."""

import json

import pytest

from stochastic_sea.errors import ConfigError
from stochastic_sea.io import (
    header_line,
    read_csv_rows,
    write_csv_file,
    write_json_file,
)
from stochastic_sea.runconfig import RunConfig, RunManifest, constant_name, split_name


def test_defaults():
    """Defaults come from the config module."""
    config = RunConfig()
    assert config["precision.bits"] == 53
    assert config["run.seed"] == 20260101
    assert config["SSEA_CANTOR_DEPTH"] == config["cantor.depth"] == 8


def test_names():
    """``table.key`` maps to the constant name and back."""
    assert constant_name("stdmap", "orbit_length") == "SSEA_STDMAP_ORBIT_LENGTH"
    assert split_name("SSEA_STDMAP_ORBIT_LENGTH") == ("stdmap", "orbit_length")


def test_layers(tmp_path):
    """File, then environment, then overrides."""
    path = tmp_path / "ssea.toml"
    path.write_text(
        "[run]\nseed = 1\njobs = 2\n[cantor]\ndepth = 5\n", encoding="utf-8"
    )
    config = RunConfig.load(
        path,
        env={"SSEA_RUN_SEED": "7", "OTHER": "x"},
        overrides={"cantor.depth": 6, "run.jobs": None},
    )
    assert config["run.seed"] == 7
    assert config["run.jobs"] == 2
    assert config["cantor.depth"] == 6


def test_coercion():
    """Values take the type of their default."""
    config = RunConfig.load(env={"SSEA_SCAN_ANGLE": "0.01", "SSEA_RUN_JOBS": "3"})
    assert config["scan.angle"] == 0.01
    assert config["run.jobs"] == 3
    with pytest.raises(ConfigError):
        config.set("run.jobs", 2.5)


def test_unknown_keys(tmp_path):
    """Unknown keys are rejected at every layer."""
    with pytest.raises(ConfigError):
        RunConfig.load(env={"SSEA_RUN_SPEED": "1"})
    with pytest.raises(ConfigError):
        RunConfig()["run.speed"]
    path = tmp_path / "bad.toml"
    path.write_text("seed = 1\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        RunConfig.load(path, env={})
    path.write_text("[run\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        RunConfig.load(path, env={})


def test_hash_follows_values():
    """Equal configurations hash equally."""
    first, second = RunConfig(), RunConfig()
    assert first.config_hash == second.config_hash
    second.set("run.seed", 1)
    assert first.config_hash != second.config_hash
    assert json.loads(first.canonical_json())["run"]["seed"] == 20260101


def test_csv_header_and_rows(tmp_path, run_config):
    """CSV files open with the config line; readers skip it."""
    rows = [(1, 0.1), (2, 1e-300)]
    path = write_csv_file(tmp_path / "rows.csv", ("a", "b"), rows, run_config)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == header_line(run_config)
    assert lines[1] == "a,b"
    rows = read_csv_rows(path)
    assert [float(r["b"]) for r in rows] == [0.1, 1e-300]


def test_json_header(tmp_path, run_config):
    """JSON outputs lead with the header."""
    path = write_json_file(tmp_path / "sub" / "out.json", {"value": 1}, run_config)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert list(data) == ["header", "value"]
    assert data["header"]["configHash"] == run_config.config_hash


def test_manifest_written_once(tmp_path, run_config):
    """The manifest records outputs and refuses a second write."""
    manifest = RunManifest.start("cantor", run_config)
    manifest.add_output(tmp_path / "cantor.json")
    path = manifest.finish(tmp_path)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["outputs"] == [str(tmp_path / "cantor.json")]
    assert data["configHash"] == run_config.config_hash
    with pytest.raises(ConfigError):
        manifest.finish(tmp_path)
