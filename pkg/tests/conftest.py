# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.


"""Pytest configuration."""

import pytest
from click.testing import CliRunner

from stochastic_sea.cantor_core import CantorSystem
from stochastic_sea.runconfig import RunConfig


@pytest.fixture
def run_config(tmp_path):
    """Configuration writing into a temporary directory."""
    return RunConfig.load(env={}, overrides={"output.directory": str(tmp_path / "out")})


@pytest.fixture
def runner(monkeypatch):
    """CLI runner isolated from ``SSEA_`` variables of the calling shell."""
    import os

    for name in list(os.environ):
        if name.startswith("SSEA_"):
            monkeypatch.delenv(name)
    return CliRunner()


@pytest.fixture
def middle_thirds():
    """The middle-thirds Cantor system."""
    return CantorSystem.middle_thirds()
