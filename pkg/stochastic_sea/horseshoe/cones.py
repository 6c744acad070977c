# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Numerical cone-field certificates for two-branch maps."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..errors import DomainError
from .model import HorseshoeMap

logger = logging.getLogger(__name__)

MIN_GRID = 20


@dataclass(frozen=True)
class ConeFieldSpec:
    """Cones ``|v1| > kappa |v2|`` (unstable) and ``|v2| > kappa |v1|`` (stable)."""

    kappa: float = 1.0

    def __post_init__(self):
        """The aspect must be positive."""
        if not self.kappa > 0:
            raise DomainError(f"Cone aspect must be positive, got {self.kappa}")

    def unstable_vectors(self) -> np.ndarray:
        """Boundary and axis vectors of the unstable cone."""
        return np.array([[self.kappa, 1.0], [self.kappa, -1.0], [1.0, 0.0]])

    def stable_vectors(self) -> np.ndarray:
        """Boundary and axis vectors of the stable cone."""
        return np.array([[1.0, self.kappa], [-1.0, self.kappa], [0.0, 1.0]])


@dataclass
class ConeReport:
    """Worst margins of the cone conditions over the sampled grids.

    Invariance margins are ``|w1| / (kappa |w2|)`` for the unstable cone
    and ``|w2| / (kappa |w1|)`` for the stable one; both pass above one.
    Growth factors are ``|w1|/|v1|`` and ``|w2|/|v2|`` per rectangle.
    """

    kappa: float
    grid: int
    unstable_margin: list[float] = field(default_factory=list)
    stable_margin: list[float] = field(default_factory=list)
    unstable_growth: list[float] = field(default_factory=list)
    stable_growth: list[float] = field(default_factory=list)
    growth_floor: float = 1.0

    @property
    def invariant(self) -> bool:
        """Whether both cone fields are mapped into themselves."""
        return min(self.unstable_margin + self.stable_margin) > 1.0

    @property
    def passed(self) -> bool:
        """Invariance plus growth of at least ``lambda**0.9`` on ``S0``."""
        return (
            self.invariant
            and self.unstable_growth[0] >= self.growth_floor
            and self.stable_growth[0] >= self.growth_floor
        )

    @property
    def message(self) -> str:
        """One-line summary."""
        if not self.invariant:
            return f"no invariant cones at kappa = {self.kappa:.4g}"
        return f"cones invariant at kappa = {self.kappa:.4g}"

    def to_dict(self) -> dict:
        """Serialize the report."""
        return {
            "kappa": self.kappa,
            "grid": self.grid,
            "passed": self.passed,
            "invariant": self.invariant,
            "message": self.message,
            "unstableMargin": self.unstable_margin,
            "stableMargin": self.stable_margin,
            "unstableGrowth": self.unstable_growth,
            "stableGrowth": self.stable_growth,
            "growthFloor": self.growth_floor,
        }


@dataclass
class BranchSamples:
    """Derivatives of both branches and their inverses on a grid."""

    grid: int
    forward: list[np.ndarray]
    backward: list[np.ndarray]

    @classmethod
    def collect(cls, model: HorseshoeMap, grid: int) -> BranchSamples:
        """Sample ``DT`` and ``DT**-1`` at the grid points of both rectangles."""
        if grid < MIN_GRID:
            raise DomainError(f"Cone checks need at least {MIN_GRID} points per side")
        forward, backward = [], []
        for index in (0, 1):
            points = model.grid(index, grid)
            matrices = np.array([model.jacobian(index, p) for p in points])
            forward.append(matrices)
            backward.append(np.linalg.inv(matrices))
        return cls(grid, forward, backward)


def _ratio(numerator: np.ndarray, denominator: np.ndarray) -> float:
    with np.errstate(divide="ignore"):
        ratios = np.where(denominator == 0, math.inf, numerator / denominator)
        return float(np.min(ratios))


def verify_cones(
    model: HorseshoeMap,
    spec: ConeFieldSpec,
    grid: int = 33,
    samples: Optional[BranchSamples] = None,
) -> ConeReport:
    """Check cone invariance and growth at every grid point.

    Failures are recorded in the report, never raised.
    """
    samples = samples or BranchSamples.collect(model, grid)
    kappa = spec.kappa
    report = ConeReport(kappa, samples.grid, growth_floor=model.lam**0.9)
    for index in (0, 1):
        w = np.einsum("pij,vj->pvi", samples.forward[index], spec.unstable_vectors())
        v = spec.unstable_vectors()
        report.unstable_margin.append(
            _ratio(np.abs(w[..., 0]), kappa * np.abs(w[..., 1]))
        )
        report.unstable_growth.append(_ratio(np.abs(w[..., 0]), np.abs(v[None, :, 0])))
        w = np.einsum("pij,vj->pvi", samples.backward[index], spec.stable_vectors())
        v = spec.stable_vectors()
        report.stable_margin.append(
            _ratio(np.abs(w[..., 1]), kappa * np.abs(w[..., 0]))
        )
        report.stable_growth.append(_ratio(np.abs(w[..., 1]), np.abs(v[None, :, 1])))
    logger.debug("Cones at kappa = %g: %s", kappa, report.message)
    return report


@dataclass
class KappaSearch:
    """Cone reports over a logarithmic ``kappa`` grid."""

    reports: list[ConeReport]

    @property
    def passing(self) -> list[float]:
        """Values of ``kappa`` that pass."""
        return [r.kappa for r in self.reports if r.passed]

    @property
    def interval(self) -> Optional[tuple[float, float]]:
        """Smallest and largest passing ``kappa``."""
        passing = self.passing
        return (min(passing), max(passing)) if passing else None

    def best(self) -> ConeReport:
        """Passing report with the largest worst-case invariance margin."""
        candidates = [r for r in self.reports if r.passed] or self.reports
        return max(candidates, key=lambda r: min(r.unstable_margin + r.stable_margin))

    def to_dict(self) -> dict:
        """Serialize the search."""
        return {
            "interval": list(self.interval) if self.interval else None,
            "reports": [r.to_dict() for r in self.reports],
        }


def kappa_search(
    model: HorseshoeMap,
    kappas: Optional[Sequence[float]] = None,
    grid: int = 33,
    scale: float = 1.0,
) -> KappaSearch:
    """Verify cones for each ``kappa``; the derivatives are sampled once.

    :param scale: Centre of the default grid, ``scale/1000`` to ``10 scale``.
    """
    if kappas is None:
        kappas = np.geomspace(scale / 1000.0, 10.0 * scale, 41)
    samples = BranchSamples.collect(model, grid)
    reports = [
        verify_cones(model, ConeFieldSpec(float(k)), samples=samples) for k in kappas
    ]
    search = KappaSearch(reports)
    logger.info("Passing kappa interval: %s", search.interval)
    return search


@dataclass(frozen=True)
class AngleBounds:
    """Both sides of the two angle distortion inequalities."""

    lhs_pair: float
    rhs_pair: float
    lhs_perturbed: Optional[float] = None
    rhs_perturbed: Optional[float] = None

    @property
    def margins(self) -> tuple[float, Optional[float]]:
        """``rhs - lhs`` of each inequality."""
        second = None
        if self.lhs_perturbed is not None:
            second = self.rhs_perturbed - self.lhs_perturbed
        return self.rhs_pair - self.lhs_pair, second

    @property
    def holds(self) -> bool:
        """Whether every evaluated inequality holds."""
        return all(m is None or m >= -1e-12 for m in self.margins)


def _sin_angle(u: np.ndarray, v: np.ndarray) -> float:
    return abs(u[0] * v[1] - u[1] * v[0]) / (np.linalg.norm(u) * np.linalg.norm(v))


def angle_bounds(a, u, v, b=None) -> AngleBounds:
    """Evaluate ``sin(Au, Av) <= |A| |A**-1| sin(u, v)``.

    With ``b`` the second inequality ``sin(Au, Bu) <= |A| |A - B|`` is
    evaluated for the unit vector along ``u``; it holds for ``A`` of unit
    determinant.

    :raises DomainError: for a zero vector.
    """
    a = np.asarray(a, dtype=float)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if not np.any(u) or not np.any(v):
        raise DomainError("Angles are undefined for a zero vector")
    norm = np.linalg.norm(a, 2)
    lhs = _sin_angle(a @ u, a @ v)
    rhs = norm * np.linalg.norm(np.linalg.inv(a), 2) * _sin_angle(u, v)
    if b is None:
        return AngleBounds(float(lhs), float(rhs))
    b = np.asarray(b, dtype=float)
    unit = u / np.linalg.norm(u)
    image = b @ unit
    lhs2 = 0.0 if not np.any(image) else _sin_angle(a @ unit, image)
    gap = float(norm * np.linalg.norm(a - b, 2))
    return AngleBounds(float(lhs), float(rhs), float(lhs2), gap)
