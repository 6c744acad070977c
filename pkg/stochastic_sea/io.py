# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""File output helpers."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from .runconfig import RunConfig


def header_line(config: RunConfig) -> str:
    """Return the comment line that opens every CSV output."""
    return f"# config_hash={config.config_hash} config={config.canonical_json()}"


def with_header(data: dict, config: Optional[RunConfig]) -> dict:
    """Prepend the config header to a JSON document."""
    if config is None:
        return data
    return {
        "header": {"configHash": config.config_hash, "config": config.echo()},
        **data,
    }


def write_json_file(
    path: Path, data: dict, config: Optional[RunConfig] = None
) -> Path:
    """Save data to a JSON file.

    Create parent directory if it doesn't exist.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(with_header(data, config), ensure_ascii=False, indent=2)
    path.write_text(text + "\n", encoding="utf-8", newline="\n")
    return path


def write_csv_file(
    path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    config: Optional[RunConfig] = None,
) -> Path:
    """Save rows to a CSV file behind the config comment line."""
    path.parent.mkdir(parents=True, exist_ok=True)
    buffer = io.StringIO()
    if config is not None:
        buffer.write(header_line(config) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    path.write_text(buffer.getvalue(), encoding="utf-8", newline="\n")
    return path


def write_plot_data(
    path: Path,
    series: dict[str, Sequence[tuple[float, float]]],
    config: Optional[RunConfig] = None,
) -> Path:
    """Write tidy long-format ``series, x, y`` rows for external plotting."""
    rows = [
        (name, x, y) for name, points in series.items() for x, y in points
    ]
    return write_csv_file(path, ("series", "x", "y"), rows, config)


def read_csv_rows(path: Path) -> list[dict[str, str]]:
    """Read a CSV written by :func:`write_csv_file`, skipping comment lines."""
    lines = [
        line
        for line in path.read_text(encoding="utf-8").splitlines()
        if not line.startswith("#")
    ]
    return list(csv.DictReader(lines))


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(float(value))
    return value
