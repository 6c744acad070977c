# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Iterate count, renormalization and the two-branch map interface."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from ..errors import ConvergenceError, DomainError, GeometryError, UnderflowError
from ..maps import mu
from ..normalform import NormalFormSeries

logger = logging.getLogger(__name__)

Region = tuple[float, float]

FD_STEP = 1e-6
"""Relative step of central differences for second derivatives."""


def choose_n(h: float, nu: float = 0.1, theta1: float = 1.0) -> int:
    """Iterate count ``floor(-log(mu(h) h**(1+nu)) / (2h))``.

    The logarithm is formed directly, so ``mu`` never needs to be
    representable.

    :raises UnderflowError: if ``lambda**-2n`` is not representable in double precision.
    """
    if not nu > 0:
        raise DomainError(f"nu must be positive, got {nu}")
    log_target = mu(h, theta1).log_value + (1.0 + nu) * math.log(h)
    n = int(math.floor(-log_target / (2.0 * h)))
    if -2.0 * n * h < math.log(np.finfo(float).tiny):
        raise UnderflowError(
            f"lambda**-2n underflows at h = {h}", log_value=-2.0 * n * h
        )
    return n


def n_bracket(
    h: float, nu: float, theta1: float, n: int
) -> tuple[float, float, float]:
    """Logs of ``mu h**(1+nu)``, ``lambda**-2n`` and ``lambda**2 mu h**(1+nu)``."""
    log_target = mu(h, theta1).log_value + (1.0 + nu) * math.log(h)
    return log_target, -2.0 * n * h, log_target + 2.0 * h


@dataclass
class Renormalization:
    """``rho(x, y) = Delta**n(xy) (x, y)`` and its inverse through ``t(s)``.

    ``t(s)`` solves ``t Delta(t)**(2n) = s``.
    """

    series: NormalFormSeries
    n: int

    @property
    def lam(self) -> float:
        """``Delta(0)``."""
        return self.series.lam

    @property
    def bracket(self) -> float:
        """Upper end ``4 lambda**-2n`` of the search interval for ``t``."""
        return 4.0 * self.lam ** (-2 * self.n)

    def delta(self, s: float) -> float:
        """``Delta(s)``."""
        return float(self.series.delta(s))

    def delta_power(self, s: float, exponent: int) -> float:
        """``Delta(s)**exponent``."""
        return self.delta(s) ** exponent

    def _f(self, t: float, s: float) -> tuple[float, float]:
        d = self.delta(t)
        dd = float(self.series.derivative(t, 1))
        m = 2 * self.n
        return t * d**m - s, d**m + m * t * d ** (m - 1) * dd

    def t(self, s: float, tol: float = 1e-16, max_iter: int = 100) -> float:
        """Safeguarded Newton solve of ``t Delta(t)**(2n) = s``.

        :raises ConvergenceError: if ``s`` is not bracketed by ``[0, 4 lambda**-2n]``.
        """
        if s == 0:
            return 0.0
        lo, hi = 0.0, self.bracket
        f_hi, _ = self._f(hi, s)
        if s < 0 or f_hi < 0:
            raise ConvergenceError(
                f"t(s) is not bracketed for s = {s}",
                stage="renormalization",
                trace=[s, f_hi],
            )
        t = min(s * self.lam ** (-2 * self.n), hi)
        trace = []
        for _ in range(max_iter):
            value, slope = self._f(t, s)
            trace.append(t)
            if value > 0:
                hi = t
            else:
                lo = t
            step = value / slope
            candidate = t - step
            if not lo < candidate < hi:
                candidate = (lo + hi) / 2.0
            if abs(candidate - t) <= tol * max(abs(t), 1e-300) or hi - lo <= tol * hi:
                return candidate
            t = candidate
        raise ConvergenceError(
            "t(s) did not converge", stage="renormalization", trace=trace
        )

    def t_derivatives(self, s: float) -> tuple[float, float, float]:
        """``t(s)``, ``t'(s)`` and ``t''(s)``."""
        t = self.t(s)
        m = 2 * self.n
        d = self.delta(t)
        d1 = float(self.series.derivative(t, 1))
        d2 = float(self.series.derivative(t, 2)) if self.series.order >= 2 else 0.0
        f1 = d**m + m * t * d ** (m - 1) * d1
        f2 = 2 * m * d ** (m - 1) * d1 + m * t * (
            (m - 1) * d ** (m - 2) * d1 * d1 + d ** (m - 1) * d2
        )
        t1 = 1.0 / f1
        return t, t1, -f2 * t1**3

    def rho(self, point) -> tuple[float, float]:
        """Renormalize a normal-form point."""
        x, y = point
        scale = self.delta_power(x * y, self.n)
        return scale * x, scale * y

    def rho_inverse(self, point) -> tuple[float, float]:
        """Normal-form point of a renormalized one."""
        x, y = point
        scale = self.delta_power(self.t(x * y), -self.n)
        return scale * x, scale * y


class HorseshoeMap:
    """Two-branch map on ``[0, side]**2`` with its inverse branches.

    Subclasses provide :meth:`branch`, :meth:`jacobian`, :meth:`inverse`
    and :meth:`edges`; everything else is derived.
    """

    lam: float = math.e
    side: float = 1.0
    n: int = 0

    def branch(self, index: int, point) -> tuple[float, float]:
        """Image of ``point`` under branch ``index``."""
        raise NotImplementedError

    def jacobian(self, index: int, point) -> np.ndarray:
        """Derivative of branch ``index``."""
        raise NotImplementedError

    def inverse(self, index: int, point) -> tuple[float, float]:
        """Preimage of ``point`` under branch ``index``."""
        raise NotImplementedError

    def edges(
        self, index: int, y: float, region: Optional[Region] = None
    ) -> tuple[float, float]:
        """X-range of rectangle ``index`` at height ``y``.

        Across the range the image x-coordinate runs over ``[0, region[0]]``;
        the default region is the whole square.
        """
        raise NotImplementedError

    def region(self, region: Optional[Region] = None) -> Region:
        """``(right, top)`` of the sampled part of the square."""
        return region or (self.side, self.side)

    def contains(self, index: int, point, region: Optional[Region] = None) -> bool:
        """Whether ``point`` lies in rectangle ``index``."""
        x, y = point
        if not 0.0 <= y <= self.region(region)[1]:
            return False
        try:
            lo, hi = self.edges(index, y, region)
        except GeometryError:
            return False
        return lo <= x <= hi

    def locate(self, point, region: Optional[Region] = None) -> int:
        """Index of the rectangle containing ``point``."""
        for index in (0, 1):
            if self.contains(index, point, region):
                return index
        raise DomainError(f"Point {tuple(point)} is outside both rectangles")

    def __call__(self, point) -> tuple[float, float]:
        """First-return map on the union of the rectangles."""
        return self.branch(self.locate(point), point)

    def grid(
        self, index: int, count: int, region: Optional[Region] = None
    ) -> np.ndarray:
        """``count x count`` points of rectangle ``index``, edges included."""
        points = []
        for y in np.linspace(0.0, self.region(region)[1], count):
            lo, hi = self.edges(index, float(y), region)
            for x in np.linspace(lo, hi, count):
                points.append((float(x), float(y)))
        return np.array(points)

    def partials(self, index: int, point, step: Optional[float] = None) -> np.ndarray:
        """``d(a, b, c, d) / d(x, y)`` by central differences of the Jacobian.

        Returns a ``(4, 2)`` array.
        """
        step = FD_STEP * self.side if step is None else step
        x, y = point
        columns = []
        for dx, dy in ((step, 0.0), (0.0, step)):
            plus = self.jacobian(index, (x + dx, y + dy)).ravel()
            minus = self.jacobian(index, (x - dx, y - dy)).ravel()
            columns.append((plus - minus) / (2.0 * step))
        return np.column_stack(columns)

    def jacobian_agreement(
        self, index: int, points: Sequence, step: float = 1e-7
    ) -> float:
        """Largest relative gap between :meth:`jacobian` and finite differences."""
        worst = 0.0
        for x, y in points:
            exact = self.jacobian(index, (x, y))
            numeric = np.empty((2, 2))
            for column, (dx, dy) in enumerate(((step, 0.0), (0.0, step))):
                plus = np.array(self.branch(index, (x + dx, y + dy)))
                minus = np.array(self.branch(index, (x - dx, y - dy)))
                numeric[:, column] = (plus - minus) / (2.0 * step)
            scale = max(float(np.max(np.abs(exact))), 1.0)
            worst = max(worst, float(np.max(np.abs(exact - numeric))) / scale)
        return worst


def solve_edge(func, lo: float, hi: float, what: str) -> float:
    """Root of an edge equation with a geometry diagnostic on bracket failure."""
    f_lo, f_hi = func(lo), func(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise GeometryError(
            f"{what} is not bracketed by [{lo:.6g}, {hi:.6g}]"
            f" (values {f_lo:.3g}, {f_hi:.3g})",
            stage="geometry",
        )
    return brentq(func, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def solve_near(
    func, start: float, lo: float, hi: float, what: str, step: float = 1e-12
) -> float:
    """Root of a steep edge equation close to ``start``.

    A secant step from ``start`` gives the first guess. The bracket around
    the guess grows fourfold until it holds a sign change or covers
    ``[lo, hi]``, so points far outside a thin rectangle are never
    evaluated unless they have to be.
    """
    f0 = func(start)
    slope = (func(start + step) - f0) / step
    if not math.isfinite(slope) or slope == 0:
        return solve_edge(func, lo, hi, what)
    offset = f0 / slope
    guess = min(max(start - offset, lo), hi)
    width = max(0.25 * abs(offset), 16.0 * step)
    while True:
        a, b = max(guess - width, lo), min(guess + width, hi)
        f_a, f_b = func(a), func(b)
        if f_a == 0 or f_b == 0 or (f_a > 0) != (f_b > 0):
            return solve_edge(func, a, b, what)
        if a == lo and b == hi:
            raise GeometryError(
                f"{what} is not bracketed by [{lo:.6g}, {hi:.6g}]", stage="geometry"
            )
        width *= 4.0
