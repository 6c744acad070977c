# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Experiments on the standard map ``f_k`` of the torus.

.. code-block:: python

    from stochastic_sea.stdmap_lab import generate_orbit, density_check

    orbit = generate_orbit(1000.0, seed=7, length=10**7, stride=1)
    density_check(1000.0, orbit).passed

Tangency scans work on any family exposing ``manifolds(k)``:

.. code-block:: python

    from stochastic_sea.stdmap_lab import ShearedStandardFamily, tangency_scan

    tree = tangency_scan(ShearedStandardFamily(k_star=7.3), (6.5, 7.5), depth=3)
    tree.tangencies
"""

from .islands import IslandRecord, cyclic_trace_defect, find_periodic, island_survey
from .orbits import (
    DensityReport,
    LyapunovEstimate,
    OrbitSample,
    chaotic_box_dimension,
    chaotic_seeds,
    covering_radius,
    delta_k,
    density_check,
    det_defect,
    duarte_bound,
    generate_orbit,
    lyapunov,
    lyapunov_ensemble,
)
from .scan import (
    ModelTangencyFamily,
    ScanNode,
    ScanTree,
    ShearedStandardFamily,
    StandardFamily,
    UnfoldingFit,
    saddle_manifolds,
    tangency_scan,
    unfolding_exponent,
)

__all__ = (
    "DensityReport",
    "IslandRecord",
    "LyapunovEstimate",
    "ModelTangencyFamily",
    "OrbitSample",
    "ScanNode",
    "ScanTree",
    "ShearedStandardFamily",
    "StandardFamily",
    "UnfoldingFit",
    "chaotic_box_dimension",
    "chaotic_seeds",
    "covering_radius",
    "cyclic_trace_defect",
    "delta_k",
    "density_check",
    "det_defect",
    "duarte_bound",
    "find_periodic",
    "generate_orbit",
    "island_survey",
    "lyapunov",
    "lyapunov_ensemble",
    "saddle_manifolds",
    "tangency_scan",
    "unfolding_exponent",
)
