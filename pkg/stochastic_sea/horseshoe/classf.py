# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Membership of a two-branch map in the class ``F(C*, eps, gamma)``.

The class asks for area preservation, a dominant expanding entry ``a``
of ``Df = [[a, b], [c, d]]``, small off-diagonal entries, small first
partials of the entries (directly and composed with the inverse), small
variation of ``log|a|`` on each rectangle, and well separated
rectangles. Members have Markov partitions whose lateral thickness is
distorted by at most ``exp(D)`` with ``D = 4(C* + 3) gamma + 2 eps``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import DomainError
from .model import HorseshoeMap, Region

logger = logging.getLogger(__name__)

CONDITIONS = ("1", "2a", "2b", "2c", "3a", "3b", "3c", "3d", "4", "5")

DET_TOLERANCE = 1e-8

C_STAR_FLOOR = 2.0

DIAMETER_SLACK = 1e-12

GAMMA_FLOOR = 1e-12
"""Smallest fitted ``gamma``; the class needs positive constants."""

EPS_FLOOR = 1e-24
"""Smallest fitted ``eps``; it keeps ``eps/gamma`` far below one."""


@dataclass(frozen=True)
class ClassFParams:
    """Constants ``C*``, ``eps`` and ``gamma`` of the class."""

    C_star: float
    eps: float
    gamma: float

    def __post_init__(self):
        """All three constants must be positive."""
        if not min(self.C_star, self.eps, self.gamma) > 0:
            raise DomainError(
                f"Class parameters must be positive, got C* = {self.C_star}, "
                f"eps = {self.eps}, gamma = {self.gamma}"
            )

    def to_dict(self) -> dict:
        """Serialize the parameters."""
        return {"C_star": self.C_star, "eps": self.eps, "gamma": self.gamma}


def distortion_bound(params: ClassFParams) -> float:
    """``D = 4 (C* + 3) gamma + 2 eps``."""
    return 4.0 * (params.C_star + 3.0) * params.gamma + 2.0 * params.eps


@dataclass
class RectangleSamples:
    """Jacobians, partials and images on the grid of one rectangle.

    ``partials[p]`` is ``d(a, b, c, d)/d(x, y)`` at point ``p`` and
    ``inverse_partials[p]`` the same derivatives composed with the
    inverse, taken in image coordinates.
    """

    points: np.ndarray
    images: np.ndarray
    jacobians: np.ndarray
    partials: np.ndarray
    inverse_partials: np.ndarray

    @classmethod
    def collect(
        cls, model: HorseshoeMap, index: int, grid: int, region: Optional[Region] = None
    ) -> RectangleSamples:
        """Sample rectangle ``index`` on a ``grid x grid`` lattice."""
        points = model.grid(index, grid, region)
        images = np.array([model.branch(index, p) for p in points])
        jacobians = np.array([model.jacobian(index, p) for p in points])
        partials = np.array([model.partials(index, p) for p in points])
        inverse_partials = np.einsum("pkj,pji->pki", partials, np.linalg.inv(jacobians))
        return cls(points, images, jacobians, partials, inverse_partials)

    def scaled(self, factor: float) -> RectangleSamples:
        """Samples after the homothety ``z -> z / factor``."""
        return RectangleSamples(
            self.points / factor,
            self.images / factor,
            self.jacobians,
            self.partials * factor,
            self.inverse_partials * factor,
        )


def _diameter(*clouds: np.ndarray) -> float:
    points = np.vstack(clouds)
    return float(np.max(cdist(points, points)))


def _distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.min(cdist(a, b)))


# Rows of ``partials``: a, b, c, d; columns: x, y.
A, B, C, D = range(4)
X, Y = range(2)

_LINEAR_DIRECT = ((A, Y), (B, X), (B, Y), (C, X), (C, Y), (D, X))
_LINEAR_INVERSE = ((B, X), (D, Y), (B, Y), (C, X), (A, X), (C, Y))


def _requirements(samples: RectangleSamples) -> dict[str, np.ndarray]:
    """Pointwise ``gamma`` needed by each of the conditions (3a)-(3d)."""
    a = np.abs(samples.jacobians[:, 0, 0])
    with np.errstate(divide="ignore", invalid="ignore"):
        excess = a - 1.0
        direct = np.abs(samples.partials)
        inverse = np.abs(samples.inverse_partials)
        return {
            "3a": np.max([inverse[:, i, j] for i, j in _LINEAR_INVERSE], axis=0)
            / excess,
            "3b": np.max([direct[:, i, j] for i, j in _LINEAR_DIRECT], axis=0)
            / excess,
            "3c": np.maximum(inverse[:, A, Y], inverse[:, D, X]) / (a * excess),
            "3d": np.maximum(direct[:, A, X], direct[:, D, Y]) / (a * excess),
        }


def _variation(samples: RectangleSamples) -> tuple[float, float]:
    """Variation of ``log|a|`` and the largest ``|a|``."""
    log_a = np.log(np.abs(samples.jacobians[:, 0, 0]))
    return float(np.max(log_a) - np.min(log_a)), float(np.exp(np.max(log_a)))


@dataclass
class ClassFReport:
    """Pass flags and worst margins per condition.

    A margin is ``rhs - lhs`` at the worst sampled point, so a condition
    passes when its margin is non-negative (positive for the strict ones).
    """

    params: ClassFParams
    grid: int
    scale: float = 1.0
    passed: dict[str, bool] = field(default_factory=dict)
    margins: dict[str, float] = field(default_factory=dict)
    variation: list[float] = field(default_factory=list)
    separation: list[float] = field(default_factory=list)
    jacobian_agreement: Optional[float] = None

    @property
    def ok(self) -> bool:
        """Whether every condition holds."""
        return all(self.passed.values())

    @property
    def distortion(self) -> float:
        """Distortion bound of the parameters."""
        return distortion_bound(self.params)

    def failures(self) -> list[str]:
        """Conditions that do not hold."""
        return [name for name in CONDITIONS if not self.passed.get(name, True)]

    def to_dict(self) -> dict:
        """Serialize the report."""
        return {
            "params": self.params.to_dict(),
            "grid": self.grid,
            "scale": self.scale,
            "passed": self.passed,
            "margins": self.margins,
            "variation": self.variation,
            "separation": self.separation,
            "distortion": self.distortion,
            "jacobianAgreement": self.jacobian_agreement,
            "ok": self.ok,
        }


def _record(
    report: ClassFReport, name: str, margin: float, strict: bool = False
) -> None:
    report.margins[name] = float(margin)
    report.passed[name] = bool(margin > 0 if strict else margin >= 0)


def _evaluate(
    rectangles: list[RectangleSamples], params: ClassFParams, grid: int, scale: float
) -> ClassFReport:
    report = ClassFReport(params, grid, scale)
    eps, gamma, c_star = params.eps, params.gamma, params.C_star
    everything = [r.points for r in rectangles]
    images = [r.images for r in rectangles]
    spread = max(_diameter(*everything), _diameter(*images))
    _record(report, "1", 1.0 + DIAMETER_SLACK - spread)

    jac = np.concatenate([r.jacobians for r in rectangles])
    a, b, c, d = jac[:, 0, 0], jac[:, 0, 1], jac[:, 1, 0], jac[:, 1, 1]
    _record(report, "2a", DET_TOLERANCE - float(np.max(np.abs(a * d - b * c - 1.0))))
    cap = c_star / eps if eps > 0 else math.inf
    margin = min(
        float(np.min(np.abs(a) - 1.0)),
        float(np.min(1.0 - np.abs(d))),
        cap - float(np.max(np.abs(a))),
    )
    _record(report, "2b", margin, strict=True)
    excess = np.abs(a) - 1.0
    off_diagonal = np.maximum(np.abs(b), np.abs(c))
    _record(report, "2c", float(np.min(eps * excess - off_diagonal)))

    for name in ("3a", "3b", "3c", "3d"):
        worst = math.inf
        for rect in rectangles:
            needed = _requirements(rect)[name]
            a_r = np.abs(rect.jacobians[:, 0, 0])
            weight = (a_r - 1.0) if name in ("3a", "3b") else a_r * (a_r - 1.0)
            worst = min(worst, float(np.min((gamma - needed) * weight)))
        _record(report, name, worst)

    worst = math.inf
    for rect in rectangles:
        variation, alpha = _variation(rect)
        report.variation.append(variation)
        worst = min(worst, gamma * (1.0 - 1.0 / alpha) - variation)
    _record(report, "4", worst)

    floor = eps / gamma if gamma > 0 else 0.0
    report.separation = [
        _distance(rectangles[0].points, rectangles[1].points),
        _distance(rectangles[0].images, rectangles[1].images),
    ]
    _record(report, "5", min(report.separation) - floor)
    return report


def _homothety(
    rectangles: list[RectangleSamples], normalize: bool
) -> tuple[list, float]:
    if not normalize:
        return rectangles, 1.0
    factor = max(
        _diameter(*[r.points for r in rectangles]),
        _diameter(*[r.images for r in rectangles]),
    )
    return [r.scaled(factor) for r in rectangles], factor


def sample_rectangles(
    model: HorseshoeMap, grid: int = 33, region: Optional[Region] = None
) -> list[RectangleSamples]:
    """Samples on both rectangles."""
    return [RectangleSamples.collect(model, i, grid, region) for i in (0, 1)]


def classF_check(
    model: HorseshoeMap,
    params: ClassFParams,
    grid: int = 33,
    region: Optional[Region] = None,
    normalize: bool = True,
    rectangles: Optional[list[RectangleSamples]] = None,
) -> ClassFReport:
    """Evaluate every condition of the class on sampled grids.

    :param region: Part of the square the rectangles are cut from.
    :param normalize: Rescale by a homothety so the larger diameter is one.
    """
    rectangles = rectangles or sample_rectangles(model, grid, region)
    scaled, factor = _homothety(rectangles, normalize)
    report = _evaluate(scaled, params, grid, factor)
    report.jacobian_agreement = max(
        model.jacobian_agreement(i, rectangles[i].points[:: max(1, grid)])
        for i in (0, 1)
    )
    logger.info("Class check %s: failures %s", params, report.failures() or "none")
    return report


def fit_class_params(
    model: HorseshoeMap,
    grid: int = 33,
    region: Optional[Region] = None,
    slack: float = 1.05,
    normalize: bool = True,
    rectangles: Optional[list[RectangleSamples]] = None,
) -> ClassFParams:
    """Smallest constants that satisfy (2)-(4) on the grids, times ``slack``.

    ``C*`` never drops below 2, and ``eps`` and ``gamma`` never drop below
    :data:`EPS_FLOOR` and :data:`GAMMA_FLOOR`.
    """
    rectangles = rectangles or sample_rectangles(model, grid, region)
    scaled, _ = _homothety(rectangles, normalize)
    jac = np.concatenate([r.jacobians for r in scaled])
    a = np.abs(jac[:, 0, 0])
    off = np.maximum(np.abs(jac[:, 0, 1]), np.abs(jac[:, 1, 0]))
    with np.errstate(divide="ignore", invalid="ignore"):
        eps = float(np.max(off / (a - 1.0)))
    gamma = 0.0
    for rect in scaled:
        for needed in _requirements(rect).values():
            gamma = max(gamma, float(np.nanmax(needed)))
        variation, alpha = _variation(rect)
        if variation > 0:
            gamma = max(gamma, variation / (1.0 - 1.0 / alpha))
    eps, gamma = max(slack * eps, EPS_FLOOR), max(slack * gamma, GAMMA_FLOOR)
    c_star = max(C_STAR_FLOOR, eps * float(np.max(a)))
    params = ClassFParams(c_star, eps, gamma)
    logger.info("Fitted class parameters %s, D = %g", params, distortion_bound(params))
    return params


def refined_fit(
    model: HorseshoeMap,
    grid: int = 33,
    region: Optional[Region] = None,
    slack: float = 1.05,
    tolerance: float = 0.05,
    max_doublings: int = 2,
) -> tuple[ClassFParams, int]:
    """Fit on doubled grids until the constants move by less than ``tolerance``."""
    params = fit_class_params(model, grid, region, slack)
    for _ in range(max_doublings):
        finer = 2 * grid - 1
        candidate = fit_class_params(model, finer, region, slack)
        moved = max(
            abs(candidate.eps - params.eps) / max(params.eps, 1e-300),
            abs(candidate.gamma - params.gamma) / max(params.gamma, 1e-300),
        )
        params, grid = candidate, finer
        if moved < tolerance:
            break
    return params, grid
