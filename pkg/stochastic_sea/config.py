# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Default configuration of the toolkit.

Every constant below can be overridden from a TOML file, where the
constant ``SSEA_<TABLE>_<KEY>`` is written as ``key`` inside the
``[table]`` section, or from the environment variable of the same name:

.. code-block:: toml

    [rescaled]
    h = 0.9

    [precision]
    bits = 128

.. code-block:: console

    $ SSEA_PRECISION_BITS=128 ssea splitting --h 0.6
"""

SSEA_PRECISION_BITS = 53
"""Significand width in bits; 53 is native double precision."""

SSEA_OUTPUT_DIRECTORY = "ssea-output"
"""Directory that receives output files and the run manifest."""

SSEA_RUN_SEED = 20260101
"""Seed of every random number generator used by a run."""

SSEA_RUN_JOBS = 1
"""Worker processes for sweeps; ``1`` runs serially."""

SSEA_STANDARD_K = 1.0
"""Coupling ``k`` of the standard map."""

SSEA_HENON_A = 0.0
"""Parameter ``a`` of the area-preserving Hénon family."""

SSEA_QUADRATIC_EPS = 1e-4
"""Parameter ``eps`` of the quadratic family."""

SSEA_RESCALED_H = 1.0
"""Logarithm ``h`` of the saddle multiplier of the rescaled family."""

SSEA_SPLITTING_THETA1 = 1.0
"""Amplitude of the first Fourier mode of the splitting function.

Only predictions depend on it; measurements never read it.
"""

SSEA_SPLITTING_JET_ORDER = 18
"""Order of the polynomial jet of the invariant manifolds."""

SSEA_SPLITTING_WINDOW = 4.0
"""Half width ``r`` of the working window ``[-r, r]^2`` for manifolds."""

SSEA_SPLITTING_QUADRATURE = 48
"""Gauss-Legendre nodes per arc for the lobe area integrals."""

SSEA_SPLITTING_LOBE_TOLERANCE = 0.02
"""Largest disagreement of the two lobe areas and the action difference,
relative to the lobe area, before more precision is requested."""

SSEA_CANTOR_DEPTH = 8
"""Refinement depth of cylinder trees."""

SSEA_CANTOR_TOLERANCE = 1e-12
"""Bisection tolerance of the dimension equations."""

SSEA_CANTOR_SAMPLES = 17
"""Sample points per cylinder for distortion estimates."""

SSEA_CANTOR_MAX_DEPTH = 20
"""Largest depth tried by the depth-doubling convergence check."""

SSEA_NORMALFORM_ORDER = 3
"""Truncation order ``M`` of the normal form series in ``s = uv``."""

SSEA_NORMALFORM_S0 = 0.05
"""Working radius ``s0`` for the product ``s = uv``."""

SSEA_NORMALFORM_RADIUS = 0.2
"""Domain radius ``r`` of the polynomial coordinate change."""

SSEA_HORSESHOE_NU = 0.1
"""Exponent ``nu`` in the choice of the iterate count ``n``."""

SSEA_HORSESHOE_ORDER = 8
"""Normal form order used by the return map construction."""

SSEA_HORSESHOE_GRID = 33
"""Grid points per side when sampling the rectangles."""

SSEA_HORSESHOE_KAPPA = 1.0
"""Default cone aspect ``kappa``."""

SSEA_HORSESHOE_SLACK = 1.05
"""Factor applied to fitted class parameters."""

SSEA_HORSESHOE_CANTOR_DEPTH = 8
"""Depth used to measure the thickness of the factor Cantor sets."""

SSEA_STDMAP_ORBIT_LENGTH = 100000
"""Default orbit length for standard map experiments."""

SSEA_STDMAP_STRIDE = 1
"""Keep every ``stride``-th orbit point."""

SSEA_STDMAP_SEEDS = 100
"""Random seeds tried when filtering chaotic orbits."""

SSEA_STDMAP_CHAOS_THRESHOLD = 0.1
"""Finite-time exponent above which a seed counts as chaotic."""

SSEA_STDMAP_FILTER_STEPS = 10000
"""Iterates used by the chaotic-seed filter."""

SSEA_STDMAP_MAX_PERIOD = 8
"""Largest period searched by the island survey."""

SSEA_STDMAP_SEED_GRID = 16
"""Seeds per side of the periodic-orbit search grid."""

SSEA_SCAN_DEPTH = 3
"""Depth of the tangency scan tree."""

SSEA_SCAN_STEPS = 16
"""Parameter samples per scanned interval."""

SSEA_SCAN_BUDGET = 400
"""Largest number of manifold evaluations of a scan."""

SSEA_SCAN_ANGLE = 1e-3
"""Angle in radians below which a merging pair signals a tangency."""

SSEA_SCAN_TOLERANCE = 1e-6
"""Bisection tolerance in ``k`` for tangency parameters."""
