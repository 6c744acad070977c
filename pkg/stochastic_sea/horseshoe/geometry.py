# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""First-return map of the rescaled family near its saddle.

Points of the square start in normal-form coordinates, scaled so that
the homoclinic anchors sit at ``(1, 0)`` and ``(0, 1)``. The map then
either makes one normal-form step (rectangle ``S0``) or makes ``n``
normal-form steps, ``k`` steps of the family along the homoclinic
excursion and ``n`` more normal-form steps (rectangle ``S1``).
Renormalizing with ``rho`` makes the square ``[0, lambda**0.1]**2``.

``S1`` is a strip of width about ``lambda**(0.1 - 2n)`` around ``x = 1``;
its edges are bracketed locally so that nothing far outside the strip
is pushed through the excursion.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import DomainError, GeometryError, WindowExitError
from ..maps import RescaledMap, RescaledParams
from ..normalform import (
    NormalFormChange,
    NormalFormSeries,
    conjugacy_residual,
    normal_apply,
)
from ..precision import WorkingPrecision
from ..separatrix import DOUBLE_H, SplittingReport, stable_manifold, unstable_manifold
from .model import (
    HorseshoeMap,
    Region,
    Renormalization,
    choose_n,
    solve_edge,
    solve_near,
)

logger = logging.getLogger(__name__)

RESIDUAL_FRACTION = 1e-3
"""Allowed conjugacy residual at the anchors, relative to ``lambda**-2n``."""

MAX_PULLBACK = 60


def _finite(point, what: str) -> tuple[float, float]:
    """``point`` as floats; a window exit when it is no longer finite."""
    x, y = (float(c) for c in point)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise WindowExitError(f"{what} left the working window", stage="geometry")
    return x, y


@dataclass
class Transit:
    """``k`` steps of the family seen through a normal-form change."""

    change: NormalFormChange
    planar: RescaledMap
    k: int

    def __call__(self, point) -> tuple[float, float]:
        """Image of a normal-form point after the excursion."""
        try:
            p = self.change.inverse_apply(point)
            for _ in range(self.k):
                p = self.planar(p)
            return _finite(self.change(p), "The excursion")
        except OverflowError as error:
            raise WindowExitError(
                f"The excursion from {tuple(point)} overflows", stage="geometry"
            ) from error

    def jacobian(self, point) -> np.ndarray:
        """Chain-rule product along the excursion."""
        try:
            p = self.change.inverse_apply(point)
            matrix = self.change.inverse_jacobian(point)
            for _ in range(self.k):
                matrix = self.planar.jacobian(p) @ matrix
                p = self.planar(p)
            matrix = self.change.jacobian(p) @ matrix
        except OverflowError as error:
            raise WindowExitError(
                f"The excursion from {tuple(point)} overflows", stage="geometry"
            ) from error
        if not np.all(np.isfinite(matrix)):
            raise WindowExitError(
                "The excursion derivative overflows", stage="geometry"
            )
        return matrix

    def inverse(self, point) -> tuple[float, float]:
        """Preimage of a normal-form point, ``k`` backward steps."""
        try:
            p = self.change.inverse_apply(point)
            for _ in range(self.k):
                p = self.planar.inverse(p)
            return _finite(self.change(p), "The backward excursion")
        except OverflowError as error:
            raise WindowExitError(
                f"The backward excursion from {tuple(point)} overflows",
                stage="geometry",
            ) from error


@dataclass
class ReturnMapGeometry:
    """Everything the first-return map is built from."""

    h: float
    nu: float
    n: int
    transit_count: int
    orbit: str
    pullbacks: tuple[int, int]
    sigma: tuple[float, float]
    anchors: tuple[tuple[float, float], tuple[float, float]]
    anchor_defect: float
    residual: float
    series: NormalFormSeries
    change: NormalFormChange
    planar: RescaledMap
    renormalization: Renormalization = field(init=False)
    transit: Transit = field(init=False)

    def __post_init__(self):
        """Build the renormalization and the excursion."""
        self.renormalization = Renormalization(self.series, self.n)
        self.transit = Transit(self.change, self.planar, self.transit_count)

    @property
    def lam(self) -> float:
        """``Delta(0)``."""
        return self.series.lam

    @property
    def side(self) -> float:
        """Side ``lambda**0.1`` of the renormalized square."""
        return self.lam**0.1

    @property
    def edge_length(self) -> float:
        """Bottom edge of the square in normal-form coordinates.

        This is ``lambda**(0.1 - n)`` up to the normal-form correction.
        """
        return self.renormalization.rho_inverse((self.side, 0.0))[0]

    def to_dict(
        self, model: Optional[RenormalizedReturnMap] = None, count: int = 17
    ) -> dict:
        """Serialize, with rectangle outlines when ``model`` is given."""
        data = {
            "h": self.h,
            "nu": self.nu,
            "n": self.n,
            "transitCount": self.transit_count,
            "orbit": self.orbit,
            "pullbacks": list(self.pullbacks),
            "sigma": list(self.sigma),
            "anchors": [list(a) for a in self.anchors],
            "anchorDefect": self.anchor_defect,
            "residual": self.residual,
            "side": self.side,
            "edgeLength": self.edge_length,
            "series": self.series.to_dict(),
        }
        if model is not None:
            data["rectangles"] = [model.outline(i, count).tolist() for i in (0, 1)]
        return data


def _pullback(
    point_at, xi: float, lam: float, radius: float, accept
) -> tuple[int, tuple]:
    """Smallest ``j`` with ``point_at(xi / lam**j)`` inside ``radius`` and accepted."""
    for j in range(MAX_PULLBACK):
        point = tuple(float(c) for c in point_at(xi / lam**j))
        norm = math.hypot(*point)
        if norm <= radius and accept(norm):
            return j, point
    raise GeometryError(
        "The homoclinic orbit does not enter the normal-form window of radius "
        f"{radius} within {MAX_PULLBACK} steps",
        stage="geometry",
    )


def build_geometry(
    params: RescaledParams,
    nu: float,
    splitting: SplittingReport,
    normal_form: tuple[NormalFormChange, NormalFormSeries],
    theta1: float = 1.0,
    jet_order: int = 18,
) -> ReturnMapGeometry:
    """Locate the homoclinic anchors and assemble the return map.

    Of the two primary homoclinic orbits the first whose excursion keeps
    the orientation of the unstable direction is used.

    :param normal_form: Pair returned by :func:`birkhoff_normalize`.
    :raises GeometryError: if the excursion leaves the normal-form window.
    """
    if params.h < DOUBLE_H:
        raise GeometryError(
            f"The return map is built in double precision only; h = {params.h} "
            f"is below {DOUBLE_H}",
            stage="geometry",
        )
    change, series = normal_form
    n = choose_n(params.h, nu, theta1)
    lam = params.lam
    floor = RESIDUAL_FRACTION * lam ** (-2 * n)
    prec = WorkingPrecision()
    wu = unstable_manifold(params, jet_order, prec=prec, sample=False)
    ws = stable_manifold(params, jet_order, prec=prec, sample=False)
    planar = RescaledMap(params.delta, lam)

    def accept(norm: float) -> bool:
        return conjugacy_residual(change, series, params, norm) <= floor * norm

    xi1, xi2 = splitting.parameters[:2]
    failures = []
    for name, xi_u, xi_s in (("primary", xi1, xi1), ("secondary", xi2, xi2 / lam)):
        j_u, q_u = _pullback(wu.point, xi_u, lam, change.radius, accept)
        j_s, q_s = _pullback(ws.point, xi_s, lam, change.radius, accept)
        sigma_x = float(change(q_u)[0])
        sigma_y = float(change(q_s)[1])
        scaled = change.scaled(sigma_x, sigma_y)
        geometry = ReturnMapGeometry(
            h=params.h,
            nu=nu,
            n=n,
            transit_count=j_u + j_s,
            orbit=name,
            pullbacks=(j_u, j_s),
            sigma=(sigma_x, sigma_y),
            anchors=(q_u, q_s),
            anchor_defect=0.0,
            residual=max(
                conjugacy_residual(change, series, params, math.hypot(*q_u)),
                conjugacy_residual(change, series, params, math.hypot(*q_s)),
            ),
            series=series.scaled(sigma_x * sigma_y),
            change=scaled,
            planar=planar,
        )
        landing = geometry.transit((1.0, 0.0))
        geometry.anchor_defect = math.hypot(landing[0], landing[1] - 1.0)
        w1 = geometry.transit.jacobian((1.0, 0.0))[0, 0]
        logger.debug(
            "%s orbit: k = %d, sigma = %s, w1 = %g, anchor defect %g",
            name,
            geometry.transit_count,
            geometry.sigma,
            w1,
            geometry.anchor_defect,
        )
        if w1 > 0:
            logger.info(
                "Return map at h = %g: n = %d, k = %d (%s orbit)",
                params.h,
                n,
                geometry.transit_count,
                name,
            )
            return geometry
        failures.append(f"{name}: w1 = {w1:.3g}")
    raise GeometryError(
        "No homoclinic excursion preserves the unstable orientation ("
        + ", ".join(failures)
        + ")",
        stage="geometry",
    )


class RenormalizedReturnMap(HorseshoeMap):
    """The first-return map in renormalized coordinates."""

    def __init__(self, geometry: ReturnMapGeometry):
        """Read the square and the iterate count off ``geometry``."""
        self.geometry = geometry
        self.renormalization = geometry.renormalization
        self.transit = geometry.transit
        self.lam = geometry.lam
        self.side = geometry.side
        self.n = geometry.n

    def _delta(self, s: float) -> tuple[float, float]:
        series = self.renormalization.series
        return float(series.delta(s)), float(series.derivative(s, 1))

    def _power(self, s: float, exponent: int) -> float:
        try:
            value = self._delta(s)[0] ** exponent
        except OverflowError:
            value = math.inf
        if not math.isfinite(value) or value == 0:
            raise WindowExitError(
                f"Delta(s)**{exponent} overflows at s = {s:.6g}", stage="geometry"
            )
        return value

    def shear(self, point) -> tuple[float, float]:
        """``G(x, y) = (x, Delta**-2n(t(xy)) y)``."""
        x, y = point
        t = self.renormalization.t(x * y)
        return x, y * self._power(t, -2 * self.n)

    def shear_jacobian(self, point) -> np.ndarray:
        """Derivative of :meth:`shear`."""
        x, y = point
        m = 2 * self.n
        t, t1, _ = self.renormalization.t_derivatives(x * y)
        d, d1 = self._delta(t)
        phi = self._power(t, -m)
        phi1 = -m * phi / d * d1 * t1
        return np.array([[1.0, 0.0], [phi1 * y * y, phi + phi1 * x * y]])

    def shear_inverse(self, point) -> tuple[float, float]:
        """``G**-1(x, y) = (x, Delta**2n(xy) y)``."""
        x, y = _finite(point, "The sheared point")
        return x, y * self._power(x * y, 2 * self.n)

    def lift(self, point) -> tuple[float, float]:
        """``G_hat(x, y) = (Delta**2n(xy) x, y)``."""
        x, y = _finite(point, "The lifted point")
        return _finite((x * self._power(x * y, 2 * self.n), y), "The lift")

    def lift_jacobian(self, point) -> np.ndarray:
        """Derivative of :meth:`lift`."""
        x, y = point
        m = 2 * self.n
        d, d1 = self._delta(x * y)
        psi = self._power(x * y, m)
        psi1 = m * psi / d * d1
        return np.array([[psi + psi1 * x * y, psi1 * x * x], [0.0, 1.0]])

    def lift_inverse(self, point) -> tuple[float, float]:
        """``G_hat**-1(x, y) = (Delta**-2n(t(xy)) x, y)``."""
        x, y = point
        t = self.renormalization.t(x * y)
        return x * self._power(t, -2 * self.n), y

    def branch(self, index: int, point) -> tuple[float, float]:
        """``S0``: one rescaled normal-form step; ``S1``: lift, excursion, shear."""
        x, y = (float(c) for c in point)
        if index == 0:
            a = self._delta(self.renormalization.t(x * y))[0]
            return a * x, y / a
        return self.lift(self.transit(self.shear((x, y))))

    def jacobian(self, index: int, point) -> np.ndarray:
        """Closed form on ``S0``, chain rule through the excursion on ``S1``."""
        x, y = (float(c) for c in point)
        if index == 0:
            t, t1, _ = self.renormalization.t_derivatives(x * y)
            a, d1 = self._delta(t)
            a1 = d1 * t1
            s = x * y
            return np.array(
                [
                    [a + a1 * s, a1 * x * x],
                    [-a1 * y * y / (a * a), 1.0 / a - a1 * s / (a * a)],
                ]
            )
        inner = self.shear((x, y))
        middle = self.transit(inner)
        return (
            self.lift_jacobian(middle)
            @ self.transit.jacobian(inner)
            @ self.shear_jacobian((x, y))
        )

    def inverse(self, index: int, point) -> tuple[float, float]:
        """Preimage under branch ``index``."""
        x, y = (float(c) for c in point)
        if index == 0:
            a = self._delta(self.renormalization.t(x * y))[0]
            return x / a, y * a
        return self.shear_inverse(self.transit.inverse(self.lift_inverse((x, y))))

    def edges(
        self, index: int, y: float, region: Optional[Region] = None
    ) -> tuple[float, float]:
        """X-range of ``S0`` or ``S1`` at height ``y``.

        The ``S1`` edges are bracketed around ``x = 1``, where the anchor
        maps to the left edge of the square.
        """
        right = self.region(region)[0]

        def image_x(x: float) -> float:
            return self.branch(index, (x, y))[0]

        if index == 0:
            return 0.0, solve_edge(
                lambda x: image_x(x) - right, 0.0, right, "Right edge of S0"
            )
        lo, hi = 1.0 / self.side, self.side
        return (
            solve_near(image_x, 1.0, lo, hi, "Left edge of S1"),
            solve_near(lambda x: image_x(x) - right, 1.0, lo, hi, "Right edge of S1"),
        )

    def outline(self, index: int, count: int = 17) -> np.ndarray:
        """Closed boundary polyline of a rectangle in normal-form coordinates."""
        ys = np.linspace(0.0, self.side, count)
        bounds = [self.edges(index, float(y)) for y in ys]
        left = [(lo, y) for (lo, _), y in zip(bounds, ys)]
        right = [(hi, y) for (_, hi), y in zip(bounds, ys)]
        ring = left + right[::-1] + left[:1]
        return np.array([self.renormalization.rho_inverse(p) for p in ring])

    def gap(self, count: int = 33) -> float:
        """Smallest horizontal distance from ``S0`` to ``S1``."""
        gaps = []
        for y in np.linspace(0.0, self.side, count):
            gaps.append(self.edges(1, float(y))[0] - self.edges(0, float(y))[1])
        return float(min(gaps))


def first_return(
    geometry: ReturnMapGeometry,
    point,
    model: Optional[RenormalizedReturnMap] = None,
):
    """Image of a normal-form point of ``S0`` or ``S1``.

    :raises DomainError: if the point lies in neither rectangle.
    """
    model = model or RenormalizedReturnMap(geometry)
    renormalization = geometry.renormalization
    index = model.locate(renormalization.rho(point))
    if index == 0:
        return normal_apply(geometry.series, point)
    p = point
    for _ in range(geometry.n):
        p = normal_apply(geometry.series, p)
    p = geometry.transit(p)
    for _ in range(geometry.n):
        p = normal_apply(geometry.series, p)
    return p


def orbit_returns(
    model: HorseshoeMap, point, returns: int = 50
) -> list[tuple[float, float]]:
    """Successive returns of ``point``; stops with an error when it escapes."""
    orbit = [tuple(point)]
    for _ in range(returns):
        try:
            orbit.append(model(orbit[-1]))
        except DomainError as error:
            raise DomainError(
                f"Orbit escaped after {len(orbit) - 1} returns"
            ) from error
    return orbit
