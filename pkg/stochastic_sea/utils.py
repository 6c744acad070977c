# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Small helpers shared by the command line and the numerical modules."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional, Sequence, TypeVar

import numpy as np

from .errors import InputError

logger = logging.getLogger(__name__)

Echo = Optional[Callable[[str], None]]

T = TypeVar("T")
R = TypeVar("R")


def progress(echo: Echo, message: str) -> None:
    """Pass a progress line to the echo callback if there is one."""
    if echo:
        echo(message)


def convert_to_list(_, __, value):
    """Turn Click's multiple=True tuple into a plain list."""
    if value is None:
        return []
    return list(value)


def parallel_map(
    func: Callable[[T], R], items: Iterable[T], jobs: int = 1
) -> list[R]:
    """Apply ``func`` to ``items`` keeping the input order.

    ``func`` must be a module-level function so worker processes can
    import it. With ``jobs <= 1`` the items are processed in this process.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug("Dispatching %d tasks to %d workers", len(items), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(func, items))


def chebyshev_lobatto(count: int, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
    """Return ``count`` Chebyshev-Lobatto points on ``[lo, hi]`` in increasing order.

    Grids with ``count = 2**j + 1`` are nested.
    """
    if count < 2:
        raise ValueError("At least two sample points are needed")
    nodes = -np.cos(np.pi * np.arange(count) / (count - 1))
    return lo + (hi - lo) * (nodes + 1.0) / 2.0


def parse_float_list(values: Sequence[str]) -> list[float]:
    """Expand ``start:stop:count`` ranges and plain numbers into floats."""
    result: list[float] = []
    for value in values:
        for part in str(value).replace(",", " ").split():
            try:
                if ":" in part:
                    start, stop, count = part.split(":")
                    result.extend(np.linspace(float(start), float(stop), int(count)))
                else:
                    result.append(float(part))
            except ValueError as e:
                raise InputError(f"Cannot read a number or range from {part!r}") from e
    return [float(x) for x in result]


def cross2(u: Sequence[float], v: Sequence[float]) -> float:
    """Return the scalar cross product of two planar vectors."""
    return float(u[0] * v[1] - u[1] * v[0])


def acute_angle(u: Sequence[float], v: Sequence[float]) -> float:
    """Return the angle in ``[0, pi/2]`` between the lines spanned by u and v."""
    nu = float(np.hypot(u[0], u[1]))
    nv = float(np.hypot(v[0], v[1]))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("Angle with a zero vector is undefined")
    sine = abs(cross2(u, v)) / (nu * nv)
    cosine = abs(float(u[0] * v[0] + u[1] * v[1])) / (nu * nv)
    return float(np.arctan2(sine, cosine))
