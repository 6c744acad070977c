# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Markov partitions of the return map and their factor Cantor sets.

The stable Cantor set lives on the bottom edge of the square and the
unstable one on the left edge. Stable leaves are taken vertical and
unstable leaves horizontal, so the projected branches are read off the
edges directly: on ``S0`` they are ``x -> lambda x``, on ``S1`` the
x-coordinate of the image of the bottom edge (and the y-coordinate of the
preimage of the left edge).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial import Chebyshev

from ..cantor_core import AffineBranch, CantorSystem, Interval, PolynomialBranch
from ..errors import ConvergenceError, GeometryError
from ..utils import chebyshev_lobatto
from .model import HorseshoeMap, solve_edge, solve_near

logger = logging.getLogger(__name__)

INTERPOLATION_NODES = 25


@dataclass
class PartitionGeometry:
    """Pieces of the stable and unstable Markov partitions."""

    lam: float
    stable: tuple[Interval, Interval]
    unstable: tuple[Interval, Interval]
    x_s: Optional[float] = None
    y_u: Optional[float] = None
    fixed_point: Optional[tuple[float, float]] = None
    trace: Optional[float] = None

    @classmethod
    def from_heteroclinic(
        cls, x_s: float, y_u: float, lam: float, check: bool = True
    ) -> PartitionGeometry:
        """Partitions ``{[0, x_s/lam], [1, x_s]}`` and ``{[0, y_u/lam], [1, y_u]}``.

        :raises GeometryError: unless both coordinates lie in ``(1, lam**0.1)``.
        """
        side = lam**0.1
        if check:
            for name, value in (("x_s", x_s), ("y_u", y_u)):
                if not 1.0 < value < side:
                    raise GeometryError(
                        f"{name} = {value:.6g} is outside (1, {side:.6g})",
                        stage="partition",
                    )
        return cls(
            lam,
            (Interval(0.0, x_s / lam), Interval(1.0, x_s)),
            (Interval(0.0, y_u / lam), Interval(1.0, y_u)),
            x_s,
            y_u,
        )

    @staticmethod
    def _thickness(pieces: tuple[Interval, Interval]) -> tuple[float, float]:
        gap = pieces[1].lo - pieces[0].hi
        if not gap > 0:
            raise GeometryError("Partition pieces overlap", stage="partition")
        return pieces[0].length / gap, pieces[1].length / gap

    @property
    def stable_thickness(self) -> tuple[float, float]:
        """``(tau_L, tau_R)`` of the stable partition."""
        return self._thickness(self.stable)

    @property
    def unstable_thickness(self) -> tuple[float, float]:
        """``(tau_L, tau_R)`` of the unstable partition."""
        return self._thickness(self.unstable)

    @property
    def region(self) -> tuple[float, float]:
        """Right and top edges of the part of the square the partition covers."""
        return self.stable[1].hi, self.unstable[1].hi

    def to_dict(self) -> dict:
        """Serialize the partition."""
        return {
            "lambda": self.lam,
            "x_s": self.x_s,
            "y_u": self.y_u,
            "stable": [piece.to_list() for piece in self.stable],
            "unstable": [piece.to_list() for piece in self.unstable],
            "stableThickness": list(self.stable_thickness),
            "unstableThickness": list(self.unstable_thickness),
            "fixedPoint": list(self.fixed_point) if self.fixed_point else None,
            "trace": self.trace,
        }


def fixed_point(
    model: HorseshoeMap, tol: float = 1e-13, max_iter: int = 50
) -> tuple[float, float]:
    """Fixed point of the ``S1`` branch by Newton's method.

    The start is the fixed point of the horizontal section through height one.
    On a thin ``S1`` the residual carries the expansion of the branch, so
    the iteration also stops once the Newton step is below ``tol``.

    :raises ConvergenceError: with the residual history.
    """
    y = 1.0
    lo, hi = model.edges(1, y)
    x = solve_edge(
        lambda s: model.branch(1, (s, y))[0] - s,
        lo,
        hi,
        "Start of the fixed point search",
    )
    z = np.array([x, y])
    trace = []
    for _ in range(max_iter):
        residual = np.array(model.branch(1, z)) - z
        trace.append(float(np.linalg.norm(residual)))
        scale = max(1.0, float(np.linalg.norm(z)))
        if trace[-1] <= tol * scale:
            return float(z[0]), float(z[1])
        step = np.linalg.solve(model.jacobian(1, z) - np.eye(2), residual)
        z = z - step
        if float(np.linalg.norm(step)) <= tol * scale:
            return float(z[0]), float(z[1])
    raise ConvergenceError(
        "Newton's method did not find the fixed point", stage="partition", trace=trace
    )


def heteroclinic_coordinates(model: HorseshoeMap) -> tuple[float, float]:
    """``x_s`` and ``y_u``, fixed points of the projected ``S1`` branches."""
    right = model.edges(1, 0.0)[1]
    x_s = solve_near(
        lambda s: model.branch(1, (s, 0.0))[0] - s, 1.0, 1.0, right, "x_s"
    )
    y_u = solve_near(
        lambda s: model.inverse(1, (0.0, s))[1] - s, 1.0, 1.0, model.side, "y_u"
    )
    return x_s, y_u


def partition_geometry(model: HorseshoeMap) -> PartitionGeometry:
    """Markov partitions of a return map, with the witness at its fixed point."""
    q = fixed_point(model)
    trace = float(np.trace(model.jacobian(1, q)))
    if trace <= 2.0:
        raise GeometryError(
            f"Fixed point {q} is not a saddle (trace {trace:.4g})", stage="partition"
        )
    x_s, y_u = heteroclinic_coordinates(model)
    partition = PartitionGeometry.from_heteroclinic(x_s, y_u, model.lam)
    partition.fixed_point = q
    partition.trace = trace
    logger.info(
        "Markov partition: x_s = %.12g, y_u = %.12g, trace %.4g", x_s, y_u, trace
    )
    return partition


def _inverse_interpolant(
    projection, hull: Interval, piece: Interval
) -> PolynomialBranch:
    """Chebyshev interpolant of the inverse of a monotone ``projection``."""
    values = chebyshev_lobatto(INTERPOLATION_NODES, hull.lo, hull.hi)
    margin = 0.25 * piece.length
    nodes = [
        solve_edge(
            lambda s, v=v: projection(s) - v,
            piece.lo - margin,
            piece.hi + margin,
            "Projected branch",
        )
        for v in values
    ]
    domain = (hull.lo, hull.hi)
    fit = Chebyshev.fit(values, nodes, INTERPOLATION_NODES - 1, domain=list(domain))
    return PolynomialBranch(tuple(float(c) for c in fit.coef), "chebyshev", domain)


def factor_systems(
    model: HorseshoeMap, partition: PartitionGeometry
) -> tuple[CantorSystem, CantorSystem]:
    """Stable and unstable factor Cantor systems of the return map."""
    systems = []
    for pieces, projection in (
        (partition.stable, lambda s: model.branch(1, (s, 0.0))[0]),
        (partition.unstable, lambda s: model.inverse(1, (0.0, s))[1]),
    ):
        hull = Interval(0.0, pieces[1].hi)
        systems.append(
            CantorSystem(
                hull,
                (
                    AffineBranch(pieces[0].hi / hull.hi, 0.0),
                    _inverse_interpolant(projection, hull, pieces[1]),
                ),
            )
        )
    return systems[0], systems[1]
