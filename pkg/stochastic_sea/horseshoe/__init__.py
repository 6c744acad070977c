# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Horseshoes of the rescaled family and the dimension of their factors.

The synthetic models run the same pipeline without any splitting
computation:

.. code-block:: python

    from stochastic_sea.horseshoe import AffineHorseshoe, synthetic_pipeline

    result = synthetic_pipeline(AffineHorseshoe.from_thickness(1.0, 1.0))
    result.total  # 2 log 2 / log 3

The full pipeline at a value of ``h`` measures the splitting, builds the
first-return map and certifies it:

.. code-block:: python

    from stochastic_sea.horseshoe import dimension_pipeline

    dimension_pipeline(1.0, nu=0.1).to_dict()
"""

from .classf import (
    ClassFParams,
    ClassFReport,
    classF_check,
    distortion_bound,
    fit_class_params,
    refined_fit,
)
from .cones import (
    AngleBounds,
    ConeFieldSpec,
    ConeReport,
    KappaSearch,
    angle_bounds,
    kappa_search,
    verify_cones,
)
from .geometry import (
    RenormalizedReturnMap,
    ReturnMapGeometry,
    build_geometry,
    first_return,
    orbit_returns,
)
from .model import HorseshoeMap, Renormalization, choose_n, n_bracket
from .partition import (
    PartitionGeometry,
    factor_systems,
    fixed_point,
    partition_geometry,
)
from .pipeline import (
    SWEEP_COLUMNS,
    DimensionPipelineResult,
    assemble_dimension,
    dimension_pipeline,
    horseshoe_sweep,
    return_map,
    synthetic_pipeline,
)
from .synthetic import AffineHorseshoe, synthetic_partition

__all__ = (
    "AffineHorseshoe",
    "AngleBounds",
    "ClassFParams",
    "ClassFReport",
    "ConeFieldSpec",
    "ConeReport",
    "DimensionPipelineResult",
    "HorseshoeMap",
    "KappaSearch",
    "PartitionGeometry",
    "Renormalization",
    "RenormalizedReturnMap",
    "ReturnMapGeometry",
    "SWEEP_COLUMNS",
    "angle_bounds",
    "assemble_dimension",
    "build_geometry",
    "choose_n",
    "classF_check",
    "dimension_pipeline",
    "distortion_bound",
    "factor_systems",
    "first_return",
    "fit_class_params",
    "fixed_point",
    "horseshoe_sweep",
    "kappa_search",
    "n_bracket",
    "orbit_returns",
    "partition_geometry",
    "refined_fit",
    "return_map",
    "synthetic_partition",
    "synthetic_pipeline",
    "verify_cones",
)
