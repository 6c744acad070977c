# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

r"""Dimension bounds for the stochastic sea of area-preserving maps.

The package measures the ingredients of a lower bound for the Hausdorff
dimension of hyperbolic sets of the standard family near its parabolic
fixed point, and runs desk-scale experiments on the standard map itself.

Quick start
-----------
Thickness gives a lower bound for the dimension of a Cantor set:

>>> import math
>>> from stochastic_sea.cantor_core import dimension_lower_bound_exact
>>> bound = dimension_lower_bound_exact(1.0, 1.0)
>>> abs(bound.d - math.log(2) / math.log(3)) < 1e-10
True

The logarithmic bound never exceeds the exact one:

>>> from stochastic_sea.cantor_core import dimension_lower_bound_log
>>> dimension_lower_bound_log(1.0, 1.0).d <= bound.d
True

Standard map
~~~~~~~~~~~~
The dimension bound for the hyperbolic sets of ``f_k`` at large ``k``:

>>> from stochastic_sea.stdmap_lab import duarte_bound
>>> abs(duarte_bound(10.0) - 0.7613) < 1e-4
True

Command line
------------
Every experiment is also available from the ``ssea`` command:

.. code-block:: console

   $ ssea cantor --builtin middle-thirds --depth 8
   $ ssea --output out horseshoe --synthetic affine --tau 1 1
   $ ssea --output out stdmap islands --k 0.3 --period 1

Configuration
-------------
Defaults live in :mod:`stochastic_sea.config`. A TOML file passed with
``--config`` and ``SSEA_<TABLE>_<KEY>`` environment variables override
them; see :class:`~stochastic_sea.runconfig.RunConfig`.
"""

__version__ = "0.3.0"

__all__ = ("__version__",)
