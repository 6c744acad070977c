# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Periodic orbits of the standard map and their stability."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from ..errors import DomainError
from ..maps import StandardMapParams, classify_trace, std_jacobian, std_lift
from ..utils import parallel_map

logger = logging.getLogger(__name__)

NEWTON_TOLERANCE = 1e-12

MAX_NEWTON = 50

DUPLICATE_DISTANCE = 1e-8


@dataclass
class IslandRecord:
    """A periodic orbit of period ``q`` through ``center``."""

    k: float
    period: int
    center: tuple[float, float]
    trace: float
    classification: str
    residual: float = 0.0

    @property
    def elliptic(self) -> bool:
        """Whether the orbit is surrounded by an elliptic island."""
        return self.classification == "elliptic"

    def row(self) -> list:
        """CSV row ``k, q, x, y, trace, class``."""
        x, y = self.center
        return [self.k, self.period, x, y, self.trace, self.classification]

    def to_dict(self) -> dict:
        """Serialize the record."""
        return {
            "k": self.k,
            "period": self.period,
            "center": list(self.center),
            "trace": self.trace,
            "classification": self.classification,
            "residual": self.residual,
        }


def _wrap(point) -> np.ndarray:
    wrapped = np.mod(point, 1.0)
    return np.where(wrapped >= 1.0, 0.0, wrapped)


def _torus_distance(p, q) -> float:
    d = np.abs(np.asarray(p) - np.asarray(q))
    d = np.minimum(d, 1.0 - d)
    return float(np.hypot(d[0], d[1]))


def iterate_with_jacobian(
    k: float, point, period: int
) -> tuple[np.ndarray, np.ndarray]:
    """Lift of ``f**period`` at ``point`` and the Jacobian product along the orbit."""
    params = StandardMapParams(k)
    z = (float(point[0]), float(point[1]))
    matrix = np.eye(2)
    for _ in range(period):
        matrix = std_jacobian(params, z).matrix @ matrix
        z = std_lift(params, z)
    return np.array(z, dtype=float), matrix


def orbit_points(k: float, center, period: int) -> np.ndarray:
    """The ``period`` points of the orbit of ``center`` on the torus."""
    params = StandardMapParams(k)
    z = (float(center[0]), float(center[1]))
    points = []
    for _ in range(period):
        points.append(_wrap(z))
        z = std_lift(params, z)
    return np.array(points)


def minimal_period(k: float, center, period: int, tol: float = 1e-9) -> int:
    """Smallest divisor ``p`` of ``period`` with ``f**p(center) = center``."""
    for p in range(1, period + 1):
        if period % p:
            continue
        image, _ = iterate_with_jacobian(k, center, p)
        if _torus_distance(_wrap(image), center) < tol:
            return p
    return period


def find_periodic(
    k: float, period: int, seed, tol: float = NEWTON_TOLERANCE
) -> Optional[IslandRecord]:
    """Newton's method on ``f**q(z) - z - m``, the integer lift ``m`` fixed at the seed.

    Returns ``None`` when the iteration diverges or stalls.
    """
    if period < 1:
        raise DomainError(f"Period must be at least 1, got {period}")
    z = np.array([float(seed[0]), float(seed[1])])
    image, _ = iterate_with_jacobian(k, z, period)
    shift = np.round(image - z)
    residual = math.inf
    for _ in range(MAX_NEWTON):
        image, matrix = iterate_with_jacobian(k, z, period)
        difference = image - z - shift
        residual = float(np.max(np.abs(difference)))
        if residual < tol:
            break
        try:
            z = z - np.linalg.solve(matrix - np.eye(2), difference)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(z)) or np.max(np.abs(z)) > 1e6:
            return None
    else:
        logger.debug(
            "Newton stalled at period %d from %s (residual %.3g)",
            period,
            tuple(seed),
            residual,
        )
        return None
    center = _wrap(z)
    q = minimal_period(k, center, period)
    _, matrix = iterate_with_jacobian(k, center, q)
    trace = float(np.trace(matrix))
    where = (float(center[0]), float(center[1]))
    return IslandRecord(k, q, where, trace, classify_trace(trace, 1e-9), residual)


def cyclic_trace_defect(record: IslandRecord) -> float:
    """Spread of the trace of ``Df**q`` over the starting points of the orbit."""
    traces = [
        float(np.trace(iterate_with_jacobian(record.k, p, record.period)[1]))
        for p in orbit_points(record.k, record.center, record.period)
    ]
    return max(traces) - min(traces)


def _survey_worker(task: tuple) -> list[IslandRecord]:
    k, period, seeds = task
    found = []
    for seed in seeds:
        record = find_periodic(k, period, seed)
        if record is not None:
            found.append(record)
    return found


def island_survey(
    k: float, periods: Iterable[int] = range(1, 9), grid: int = 16, jobs: int = 1
) -> list[IslandRecord]:
    """Periodic orbits found from a ``grid x grid`` seed lattice for each period.

    Orbits found more than once, from any of their points, are kept once.
    """
    ticks = (np.arange(grid) + 0.5) / grid
    seeds = [(float(x), float(y)) for x in ticks for y in ticks]
    batches = parallel_map(_survey_worker, [(k, int(q), seeds) for q in periods], jobs)
    records: list[IslandRecord] = []
    orbits: list[np.ndarray] = []
    for record in (r for batch in batches for r in batch):
        if any(
            len(points) == record.period
            and min(_torus_distance(record.center, p) for p in points)
            < DUPLICATE_DISTANCE
            for points in orbits
        ):
            continue
        records.append(record)
        orbits.append(orbit_points(k, record.center, record.period))
    records.sort(key=lambda r: (r.period, r.center))
    logger.info(
        "%d periodic orbits at k = %g, %d elliptic",
        len(records), k, sum(r.elliptic for r in records),
    )
    return records
