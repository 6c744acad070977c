# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Orbits of the standard map, Lyapunov exponents and orbit statistics."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from ..cantor_core import DimensionBound, box_dimension
from ..errors import DomainError
from ..maps import StandardMapParams, std_jacobian, std_lift
from ..utils import parallel_map

logger = logging.getLogger(__name__)

METHODS = ("qr", "divergence")

MIN_LENGTH = 10_000

RENORMALIZE_EVERY = 8

DIVERGENCE_OFFSET = 1e-8

PERIODIC_TOLERANCE = 1e-10


def _wrap(value: float) -> float:
    r = value - math.floor(value)
    return 0.0 if r >= 1.0 else r


@dataclass
class OrbitSample:
    """Points of one orbit on the torus, every ``stride``-th iterate."""

    k: float
    initial: tuple[float, float]
    length: int
    stride: int
    seed: Optional[int]
    points: np.ndarray = field(repr=False, default_factory=lambda: np.empty((0, 2)))

    def to_dict(self) -> dict:
        """Serialize the orbit parameters without the points."""
        return {
            "k": self.k,
            "initial": list(self.initial),
            "length": self.length,
            "stride": self.stride,
            "seed": self.seed,
            "stored": len(self.points),
        }


def random_points(count: int, seed: Optional[int]) -> np.ndarray:
    """Uniform points of the torus from a seeded generator."""
    return np.random.default_rng(seed).random((count, 2))


def generate_orbit(
    k: float,
    seed: Optional[int] = None,
    length: int = 100_000,
    stride: int = 1,
    initial: Optional[Sequence[float]] = None,
) -> OrbitSample:
    """Iterate the standard map from ``initial`` or from a seeded random point.

    The same ``(k, seed, length, stride)`` reproduces the same points bit for bit.
    """
    if length < 1 or stride < 1:
        raise DomainError("Orbit length and stride must be positive")
    if initial is None:
        initial = random_points(1, seed)[0]
    x, y = float(initial[0]), float(initial[1])
    two_pi = 2.0 * math.pi
    points = np.empty((length // stride + 1, 2))
    points[0] = (x, y)
    stored = 1
    for step in range(1, length + 1):
        y = _wrap(y + k * math.sin(two_pi * x))
        x = _wrap(x + y)
        if step % stride == 0:
            points[stored] = (x, y)
            stored += 1
    return OrbitSample(
        k, (float(initial[0]), float(initial[1])), length, stride, seed, points[:stored]
    )


def det_defect(k: float, points: np.ndarray) -> float:
    """Largest ``|det Df - 1|`` over ``points``."""
    return max(abs(std_jacobian(StandardMapParams(k), p).det - 1.0) for p in points)


@dataclass
class LyapunovEstimate:
    """Finite-time Lyapunov exponent in nats per iterate."""

    value: float
    length: int
    method: str
    spread: float = 0.0
    seeds: int = 1
    periodic: bool = False
    initial: Optional[tuple[float, float]] = None

    def __post_init__(self):
        """Check the method name."""
        if self.method not in METHODS:
            raise DomainError(f"Unknown Lyapunov method: {self.method}")

    def to_dict(self) -> dict:
        """Serialize the estimate."""
        return {
            "value": self.value,
            "length": self.length,
            "method": self.method,
            "spread": self.spread,
            "seeds": self.seeds,
            "periodic": self.periodic,
            "initial": list(self.initial) if self.initial else None,
        }


def _returned(point, start) -> bool:
    return (
        abs(point[0] - start[0]) < PERIODIC_TOLERANCE
        and abs(point[1] - start[1]) < PERIODIC_TOLERANCE
    )


def _lyapunov_qr(k: float, point, length: int) -> tuple[float, bool]:
    params = StandardMapParams(k)
    x, y = float(point[0]), float(point[1])
    start = (x, y)
    basis = np.eye(2)
    block = np.eye(2)
    total = 0.0
    periodic = False
    for step in range(1, length + 1):
        block = std_jacobian(params, (x, y)).matrix @ block
        x, y = std_lift(params, (x, y))
        x, y = _wrap(x), _wrap(y)
        if _returned((x, y), start):
            periodic = True
        if step % RENORMALIZE_EVERY == 0 or step == length:
            basis, r = np.linalg.qr(block @ basis)
            total += math.log(abs(r[0, 0]))
            block = np.eye(2)
    return total / length, periodic


def _lyapunov_divergence(k: float, point, length: int) -> tuple[float, bool]:
    params = StandardMapParams(k)
    x, y = float(point[0]), float(point[1])
    angle = 2.0 * math.pi * ((x * 7919.0 + y * 104729.0) % 1.0)
    u = x + DIVERGENCE_OFFSET * math.cos(angle)
    v = y + DIVERGENCE_OFFSET * math.sin(angle)
    start = (x, y)
    total = 0.0
    periodic = False
    for _ in range(length):
        x, y = std_lift(params, (x, y))
        u, v = std_lift(params, (u, v))
        shift_x, shift_y = math.floor(x), math.floor(y)
        x, y, u, v = x - shift_x, y - shift_y, u - shift_x, v - shift_y
        distance = math.hypot(u - x, v - y)
        if distance == 0.0:
            periodic = True
            break
        total += math.log(distance / DIVERGENCE_OFFSET)
        scale = DIVERGENCE_OFFSET / distance
        u, v = x + (u - x) * scale, y + (v - y) * scale
        if _returned((x, y), start):
            periodic = True
    return total / length, periodic


def lyapunov(
    k: float, point, length: int = MIN_LENGTH, method: str = "qr"
) -> LyapunovEstimate:
    """Largest Lyapunov exponent along the orbit of ``point``.

    ``"qr"`` renormalizes the Jacobian product by QR every few steps;
    ``"divergence"`` follows a companion orbit at a fixed small distance in
    the lift. An orbit that returns to its start is flagged periodic.
    """
    if length < MIN_LENGTH:
        raise DomainError(f"Lyapunov estimates need at least {MIN_LENGTH} iterates")
    if method not in METHODS:
        raise DomainError(f"Unknown Lyapunov method: {method}")
    estimator = _lyapunov_qr if method == "qr" else _lyapunov_divergence
    value, periodic = estimator(k, point, length)
    if periodic:
        logger.warning("Orbit of %s at k = %g is periodic", tuple(point), k)
    initial = (float(point[0]), float(point[1]))
    return LyapunovEstimate(value, length, method, periodic=periodic, initial=initial)


def _finite_time(task: tuple) -> float:
    k, point, length, method = task
    estimator = _lyapunov_qr if method == "qr" else _lyapunov_divergence
    return estimator(k, point, length)[0]


def finite_time_exponents(
    k: float,
    points: Sequence[Sequence[float]],
    length: int = MIN_LENGTH,
    method: str = "qr",
    jobs: int = 1,
) -> np.ndarray:
    """Exponent of each initial point, in input order."""
    if method not in METHODS:
        raise DomainError(f"Unknown Lyapunov method: {method}")
    tasks = [(k, tuple(float(c) for c in p), length, method) for p in points]
    return np.array(parallel_map(_finite_time, tasks, jobs), dtype=float)


def lyapunov_ensemble(
    k: float,
    points: Sequence[Sequence[float]],
    length: int = MIN_LENGTH,
    method: str = "qr",
    jobs: int = 1,
) -> LyapunovEstimate:
    """Mean exponent over several initial points; ``spread`` is their deviation."""
    if not len(points):
        raise DomainError("The ensemble is empty")
    if length < MIN_LENGTH:
        raise DomainError(f"Lyapunov estimates need at least {MIN_LENGTH} iterates")
    values = finite_time_exponents(k, points, length, method, jobs)
    return LyapunovEstimate(
        float(np.mean(values)), length, method, float(np.std(values)), len(values)
    )


def chaotic_seeds(
    k: float,
    count: int = 100,
    steps: int = 10_000,
    threshold: float = 0.1,
    seed: Optional[int] = None,
    jobs: int = 1,
) -> np.ndarray:
    """Random seeds whose finite-time exponent after ``steps`` exceeds ``threshold``."""
    candidates = random_points(count, seed)
    values = finite_time_exponents(k, candidates, steps, "qr", jobs)
    chosen = candidates[values > threshold]
    logger.info("%d of %d seeds are chaotic at k = %g", len(chosen), count, k)
    return chosen


def delta_k(k: float) -> float:
    """Density radius ``4 / k**(1/3)``."""
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")
    return 4.0 / k ** (1.0 / 3.0)


def duarte_bound(k: float) -> float:
    """Dimension lower bound ``2 log 2 / log(2 + 9 / k**(1/3))``."""
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")
    return 2.0 * math.log(2.0) / math.log(2.0 + 9.0 / k ** (1.0 / 3.0))


@dataclass
class DensityReport:
    """Covering radius of an orbit against ``delta_k``."""

    k: float
    delta_target: float
    achieved: float
    length: int
    probes: int = 64

    @property
    def passed(self) -> bool:
        """Whether the orbit is ``delta_k``-dense on the probe grid."""
        return self.achieved <= self.delta_target

    def row(self) -> list:
        """CSV row ``k, delta_target, achieved, N``."""
        return [self.k, self.delta_target, self.achieved, self.length]

    def to_dict(self) -> dict:
        """Serialize the report."""
        return {
            "k": self.k,
            "deltaTarget": self.delta_target,
            "achieved": self.achieved,
            "length": self.length,
            "probes": self.probes,
            "passed": self.passed,
        }


def covering_radius(points: np.ndarray, probes: int = 64) -> float:
    """Largest torus distance from a ``probes x probes`` grid to the nearest point."""
    tree = cKDTree(np.mod(points, 1.0), boxsize=1.0)
    ticks = (np.arange(probes) + 0.5) / probes
    grid = np.array(np.meshgrid(ticks, ticks)).reshape(2, -1).T
    distances, _ = tree.query(grid)
    return float(np.max(distances))


def density_check(k: float, orbit: OrbitSample, probes: int = 64) -> DensityReport:
    """Compare the covering radius of ``orbit`` with ``delta_k``."""
    radius = covering_radius(orbit.points, probes)
    return DensityReport(k, delta_k(k), radius, orbit.length, probes)


def chaotic_box_dimension(
    k: float, orbits: Sequence[OrbitSample], scales: Optional[Sequence[float]] = None
) -> DimensionBound:
    """Box dimension of the union of the orbit points.

    :raises DomainError: for an empty ensemble.
    """
    if not orbits:
        raise DomainError(f"No chaotic orbits at k = {k}")
    points = np.vstack([orbit.points for orbit in orbits])
    return box_dimension(points, scales)
