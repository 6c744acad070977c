# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Exactly solvable two-branch horseshoes."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..cantor_core import CantorSystem, Interval
from ..errors import DomainError
from .model import HorseshoeMap, Region
from .partition import PartitionGeometry


class AffineHorseshoe(HorseshoeMap):
    """Affine horseshoe on the unit square without shear.

    ``S0 = [0, a0] x [0, 1]`` is stretched by ``(x/a0, a0 y)`` onto the
    whole width, ``S1 = [1 - a1, 1] x [0, 1]`` by
    ``((x - 1 + a1)/a1, 1 - a1 + a1 y)``. Both factor Cantor sets are
    affine with ratios ``a0`` and ``a1``.
    """

    side = 1.0

    def __init__(self, alpha0: float, alpha1: float):
        """Check that the two strips leave a gap."""
        if not (0 < alpha0 and 0 < alpha1 and alpha0 + alpha1 < 1):
            raise DomainError(
                f"Ratios need a0, a1 > 0 and a0 + a1 < 1: {alpha0}, {alpha1}"
            )
        self.alphas = (alpha0, alpha1)
        self.lam = 1.0 / alpha0

    @classmethod
    def from_thickness(cls, tau_L: float, tau_R: float) -> AffineHorseshoe:
        """Model whose partitions have thickness ``(tau_L, tau_R)``."""
        if not (tau_L > 0 and tau_R > 0):
            raise DomainError(f"Thickness values must be positive: {tau_L}, {tau_R}")
        total = 1.0 + tau_L + tau_R
        return cls(tau_L / total, tau_R / total)

    @classmethod
    def linear(cls, expansion: float) -> AffineHorseshoe:
        """Block-diagonal branches ``diag(expansion, 1/expansion)``."""
        if not expansion > 2:
            raise DomainError(f"Expansion must exceed 2, got {expansion}")
        return cls(1.0 / expansion, 1.0 / expansion)

    def _offsets(self, index: int) -> tuple[float, float]:
        a = self.alphas[index]
        return (0.0, 0.0) if index == 0 else (1.0 - a, 1.0 - a)

    def branch(self, index: int, point) -> tuple[float, float]:
        """Affine stretch of strip ``index`` onto the square."""
        a = self.alphas[index]
        ox, oy = self._offsets(index)
        x, y = point
        return (x - ox) / a, oy + a * y

    def jacobian(self, index: int, point) -> np.ndarray:
        """``diag(1/a, a)`` for the ratio ``a`` of the strip."""
        a = self.alphas[index]
        return np.diag([1.0 / a, a])

    def inverse(self, index: int, point) -> tuple[float, float]:
        """Preimage in strip ``index``."""
        a = self.alphas[index]
        ox, oy = self._offsets(index)
        x, y = point
        return ox + a * x, (y - oy) / a

    def edges(
        self, index: int, y: float, region: Optional[Region] = None
    ) -> tuple[float, float]:
        """X-range of strip ``index``; independent of ``y``."""
        right = self.region(region)[0]
        ox, _ = self._offsets(index)
        return ox, ox + self.alphas[index] * right

    def partials(self, index: int, point, step: Optional[float] = None) -> np.ndarray:
        """The Jacobians are constant."""
        return np.zeros((4, 2))

    def markov_partition(self) -> PartitionGeometry:
        """Partitions ``{[0, a0], [1 - a1, 1]}`` on both edges."""
        a0, a1 = self.alphas
        pieces = (Interval(0.0, a0), Interval(1.0 - a1, 1.0))
        return PartitionGeometry(self.lam, pieces, pieces)

    def factor_systems(self) -> tuple[CantorSystem, CantorSystem]:
        """Both factors are the affine system with ratios ``(a0, a1)``."""
        system = CantorSystem.affine(*self.alphas)
        return system, system


def synthetic_partition(
    x_s: float, lam: float, y_u: Optional[float] = None
) -> PartitionGeometry:
    """Partition of a return map with prescribed heteroclinic coordinates."""
    return PartitionGeometry.from_heteroclinic(x_s, x_s if y_u is None else y_u, lam)
