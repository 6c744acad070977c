# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Run configuration and manifest.

A :class:`RunConfig` starts from the defaults in
:mod:`stochastic_sea.config`, applies a TOML file, then ``SSEA_``
environment variables, then explicit overrides. Unknown keys are rejected
at every layer.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping, Optional

from . import config as defaults
from .errors import ConfigError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

PREFIX = "SSEA_"


def default_values() -> dict[str, Any]:
    """Collect the ``SSEA_`` constants of the config module."""
    names = [name for name in dir(defaults) if name.startswith(PREFIX)]
    return {name: getattr(defaults, name) for name in names}


def constant_name(table: str, key: str) -> str:
    """Map a TOML ``table.key`` pair to its constant name."""
    return f"{PREFIX}{table}_{key}".upper()


def split_name(name: str) -> tuple[str, str]:
    """Map a constant name back to its ``(table, key)`` pair."""
    table, _, key = name[len(PREFIX) :].lower().partition("_")
    return table, key


def _coerce(name: str, value: Any, default: Any) -> Any:
    """Convert ``value`` to the type of ``default``."""
    try:
        if isinstance(default, bool):
            if isinstance(value, str):
                return value.strip().lower() in ("1", "true", "yes", "on")
            return bool(value)
        if isinstance(default, int):
            if isinstance(value, float) and not value.is_integer():
                raise ValueError("expected an integer")
            return int(value)
        if isinstance(default, float):
            return float(value)
        return str(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid value for {name}: {value!r} ({e})") from e


@dataclass
class RunConfig:
    """Effective configuration of one run."""

    values: dict[str, Any] = field(default_factory=default_values)

    @classmethod
    def load(
        cls,
        path: Optional[Path] = None,
        env: Optional[Mapping[str, str]] = None,
        overrides: Optional[Mapping[str, Any]] = None,
    ) -> RunConfig:
        """Build a configuration from all layers.

        :param path: Optional TOML file.
        :param env: Environment mapping, ``os.environ`` when ``None``.
        :param overrides: Constant names or ``table.key`` strings to values.
        :return: The merged configuration.
        """
        run_config = cls()
        if path is not None:
            run_config.update_from_toml(Path(path))
        run_config.update_from_env(os.environ if env is None else env)
        for key, value in (overrides or {}).items():
            if value is not None:
                run_config.set(key, value)
        return run_config

    def update_from_toml(self, path: Path) -> None:
        """Apply the tables of a TOML file."""
        try:
            with path.open("rb") as fp:
                document = tomllib.load(fp)
        except (OSError, tomllib.TOMLDecodeError) as e:
            raise ConfigError(f"Cannot read config file {path}: {e}") from e

        for table, entries in document.items():
            if not isinstance(entries, dict):
                raise ConfigError(f"Top-level key '{table}' must be a table")
            for key, value in entries.items():
                self.set(constant_name(table, key), value)
        logger.debug("Loaded configuration from %s", path)

    def update_from_env(self, env: Mapping[str, str]) -> None:
        """Apply ``SSEA_`` environment variables."""
        for name, value in env.items():
            if name.startswith(PREFIX):
                self.set(name, value)

    def set(self, key: str, value: Any) -> None:
        """Set one entry given its constant name or ``table.key``."""
        name = constant_name(*key.split(".", 1)) if "." in key else key.upper()
        if name not in self.values:
            raise ConfigError(f"Unknown configuration key: {key}")
        self.values[name] = _coerce(name, value, getattr(defaults, name))

    def __getitem__(self, key: str) -> Any:
        """Look up an entry by constant name or ``table.key``."""
        name = constant_name(*key.split(".", 1)) if "." in key else key.upper()
        try:
            return self.values[name]
        except KeyError:
            raise ConfigError(f"Unknown configuration key: {key}") from None

    def echo(self) -> dict[str, dict[str, Any]]:
        """Return the configuration as nested ``{table: {key: value}}``."""
        nested: dict[str, dict[str, Any]] = {}
        for name in sorted(self.values):
            table, key = split_name(name)
            nested.setdefault(table, {})[key] = self.values[name]
        return nested

    def canonical_json(self) -> str:
        """Serialize the configuration deterministically."""
        return json.dumps(self.echo(), sort_keys=True, separators=(",", ":"))

    @property
    def config_hash(self) -> str:
        """SHA-256 of the canonical configuration."""
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()

    @property
    def output_directory(self) -> Path:
        """Directory receiving the outputs of the run."""
        return Path(self.values["SSEA_OUTPUT_DIRECTORY"])


@dataclass
class RunManifest:
    """Record of one command invocation."""

    command: str
    config_hash: str
    started: str = field(default_factory=lambda: _now())
    finished: Optional[str] = None
    outputs: list[str] = field(default_factory=list)
    version: str = ""

    @classmethod
    def start(cls, command: str, run_config: RunConfig) -> RunManifest:
        """Open a manifest for ``command``."""
        from . import __version__

        return cls(
            command=command, config_hash=run_config.config_hash, version=__version__
        )

    def add_output(self, path: Path) -> None:
        """Register an output file."""
        self.outputs.append(str(path))

    def finish(self, directory: Path) -> Path:
        """Stamp the end time and write ``manifest.json`` once."""
        if self.finished is not None:
            raise ConfigError("Run manifest was already written")
        self.finished = _now()
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / "manifest.json"
        data = {
            "command": self.command,
            "configHash": self.config_hash,
            "started": self.started,
            "finished": self.finished,
            "outputs": self.outputs,
            "version": self.version,
        }
        path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        return path


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()
