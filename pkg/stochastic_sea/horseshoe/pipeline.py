# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Lower bound for the dimension of the horseshoe, stage by stage.

Partition thickness, widened by the distortion bound of the class, gives
thickness bounds for both factor Cantor sets; each factor contributes the
root of the dimension equation and the horseshoe the sum.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..cantor_core import (
    CantorSystem,
    DimensionBound,
    ThicknessReport,
    dimension_lower_bound_exact,
    dimension_lower_bound_log,
    lateral_thickness,
    refine,
    thickness_interval,
)
from ..errors import DegenerateGapError
from ..maps import RescaledParams
from ..normalform import birkhoff_normalize
from ..runconfig import RunConfig
from ..separatrix import measure_splitting
from ..utils import Echo, parallel_map, progress
from .classf import (
    ClassFParams,
    ClassFReport,
    classF_check,
    distortion_bound,
    fit_class_params,
    sample_rectangles,
)
from .cones import KappaSearch, kappa_search
from .geometry import RenormalizedReturnMap, build_geometry
from .model import HorseshoeMap
from .partition import PartitionGeometry, factor_systems, partition_geometry
from .synthetic import AffineHorseshoe

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "h", "nu", "n", "tauL_s", "tauR_s", "tauL_u", "tauR_u", "D", "d_s", "d_u", "total",
]

SOUNDNESS_SLACK = 1e-9


@dataclass
class FactorDimension:
    """Thickness and dimension bounds of one factor Cantor set."""

    tau: tuple[float, float]
    interval_L: tuple[float, float]
    interval_R: tuple[float, float]
    measured: Optional[ThicknessReport]
    exact: DimensionBound
    log: DimensionBound

    @property
    def sound(self) -> bool:
        """Whether the measured thickness lies inside the distortion intervals."""
        if self.measured is None:
            return False
        low, high = 1.0 - SOUNDNESS_SLACK, 1.0 + SOUNDNESS_SLACK
        left, right = self.interval_L, self.interval_R
        return (
            left[0] * low <= self.measured.tau_L <= left[1] * high
            and right[0] * low <= self.measured.tau_R <= right[1] * high
        )

    def to_dict(self) -> dict:
        """Serialize the factor."""
        return {
            "tau": list(self.tau),
            "intervalL": list(self.interval_L),
            "intervalR": list(self.interval_R),
            "measured": self.measured.to_dict() if self.measured else None,
            "sound": self.sound,
            "exact": self.exact.to_dict(),
            "log": self.log.to_dict(),
        }


@dataclass
class DimensionPipelineResult:
    """Outcome of the dimension pipeline."""

    h: Optional[float]
    nu: Optional[float]
    n: int
    distortion: float
    params: ClassFParams
    stable: FactorDimension
    unstable: FactorDimension
    partition: PartitionGeometry
    class_report: Optional[ClassFReport] = None
    cones: Optional[KappaSearch] = None
    geometry: dict = field(default_factory=dict)

    @property
    def d_s(self) -> float:
        """Lower bound for the stable factor."""
        return self.stable.exact.d

    @property
    def d_u(self) -> float:
        """Lower bound for the unstable factor."""
        return self.unstable.exact.d

    @property
    def total(self) -> float:
        """``d_s + d_u``."""
        return self.d_s + self.d_u

    @property
    def log_total(self) -> float:
        """Sum of the logarithmic bounds."""
        return self.stable.log.d + self.unstable.log.d

    def row(self) -> list:
        """CSV row in :data:`SWEEP_COLUMNS` order."""
        return [
            self.h, self.nu, self.n,
            *self.stable.tau, *self.unstable.tau,
            self.distortion, self.d_s, self.d_u, self.total,
        ]

    def to_dict(self) -> dict:
        """Serialize the result."""
        return {
            "h": self.h,
            "nu": self.nu,
            "n": self.n,
            "D": self.distortion,
            "params": self.params.to_dict(),
            "stable": self.stable.to_dict(),
            "unstable": self.unstable.to_dict(),
            "d_s": self.d_s,
            "d_u": self.d_u,
            "total": self.total,
            "logTotal": self.log_total,
            "partition": self.partition.to_dict(),
            "classF": self.class_report.to_dict() if self.class_report else None,
            "cones": self.cones.to_dict() if self.cones else None,
            "geometry": self.geometry,
        }


def _measured(system: CantorSystem, depth: int) -> Optional[ThicknessReport]:
    while depth >= 1:
        try:
            return lateral_thickness(refine(system, depth))
        except DegenerateGapError:
            logger.debug("Gaps unresolved at depth %d", depth)
            depth -= 1
    return None


def factor_dimension(
    tau: tuple[float, float],
    distortion: float,
    system: Optional[CantorSystem],
    depth: int,
) -> FactorDimension:
    """Widen ``tau`` by ``exp(distortion)`` and bound the dimension."""
    shrink = math.exp(-distortion)
    return FactorDimension(
        tau,
        thickness_interval(tau[0], distortion),
        thickness_interval(tau[1], distortion),
        _measured(system, depth) if system is not None else None,
        dimension_lower_bound_exact(shrink * tau[0], shrink * tau[1]),
        dimension_lower_bound_log(shrink * tau[0], shrink * tau[1]),
    )


def assemble_dimension(
    partition: PartitionGeometry,
    systems: Sequence[CantorSystem],
    params: ClassFParams,
    depth: int = 8,
    h: Optional[float] = None,
    nu: Optional[float] = None,
    n: int = 0,
) -> DimensionPipelineResult:
    """Combine partitions, factor systems and class constants into the bound."""
    distortion = distortion_bound(params)
    result = DimensionPipelineResult(
        h,
        nu,
        n,
        distortion,
        params,
        factor_dimension(partition.stable_thickness, distortion, systems[0], depth),
        factor_dimension(partition.unstable_thickness, distortion, systems[1], depth),
        partition,
    )
    logger.info(
        "Dimension bound %.6f = %.6f + %.6f (D = %.4g)",
        result.total, result.d_s, result.d_u, distortion,
    )
    return result


def synthetic_pipeline(
    model: AffineHorseshoe, grid: int = 33, depth: int = 8, slack: float = 1.0
) -> DimensionPipelineResult:
    """Run the pipeline on an exactly solvable affine horseshoe."""
    rectangles = sample_rectangles(model, grid)
    params = fit_class_params(model, grid, slack=slack, rectangles=rectangles)
    result = assemble_dimension(
        model.markov_partition(), model.factor_systems(), params, depth
    )
    result.class_report = classF_check(model, params, grid, rectangles=rectangles)
    result.cones = kappa_search(model, grid=grid)
    return result


def return_map(
    h: float, nu: float = 0.1, theta1: float = 1.0, config: Optional[RunConfig] = None
) -> RenormalizedReturnMap:
    """Measure the splitting, normalize and build the renormalized return map."""
    config = config or RunConfig()
    params = RescaledParams.from_h(h)
    splitting = measure_splitting(
        params,
        config["precision.bits"],
        config["splitting.jet_order"],
        window=config["splitting.window"],
        tolerance=config["splitting.lobe_tolerance"],
    )
    normal_form = birkhoff_normalize(
        params,
        config["horseshoe.order"],
        config["normalform.radius"],
        config["normalform.s0"],
    )
    geometry = build_geometry(
        params, nu, splitting, normal_form, theta1, config["splitting.jet_order"]
    )
    return RenormalizedReturnMap(geometry)


def dimension_pipeline(
    h: float,
    nu: float = 0.1,
    theta1: float = 1.0,
    config: Optional[RunConfig] = None,
    model: Optional[HorseshoeMap] = None,
) -> DimensionPipelineResult:
    """Dimension lower bound of the horseshoe of the rescaled family at ``h``.

    Stage failures propagate as :class:`StageError` subclasses carrying the stage name.
    """
    config = config or RunConfig()
    grid = config["horseshoe.grid"]
    model = model or return_map(h, nu, theta1, config)
    cones = kappa_search(model, grid=grid, scale=h ** (-1.0 - nu))
    partition = partition_geometry(model)
    systems = factor_systems(model, partition)
    rectangles = sample_rectangles(model, grid, partition.region)
    params = fit_class_params(
        model, grid, slack=config["horseshoe.slack"], rectangles=rectangles
    )
    result = assemble_dimension(
        partition, systems, params, config["horseshoe.cantor_depth"], h, nu, model.n
    )
    result.class_report = classF_check(model, params, grid, rectangles=rectangles)
    result.cones = cones
    if isinstance(model, RenormalizedReturnMap):
        result.geometry = model.geometry.to_dict(model)
    return result


def _sweep_worker(task: tuple) -> DimensionPipelineResult:
    h, nu, theta1, values = task
    return dimension_pipeline(h, nu, theta1, RunConfig(dict(values)))


def horseshoe_sweep(
    hs: Sequence[float],
    nu: float = 0.1,
    theta1: float = 1.0,
    config: Optional[RunConfig] = None,
    jobs: int = 1,
    echo: Echo = None,
) -> list[DimensionPipelineResult]:
    """Run the pipeline at several ``h``, in parallel when ``jobs > 1``."""
    config = config or RunConfig()
    tasks = [(float(h), nu, theta1, tuple(config.values.items())) for h in hs]
    results = parallel_map(_sweep_worker, tasks, jobs)
    for result in results:
        progress(echo, f"h={result.h:g} n={result.n} total={result.total:.6f}")
    return results
