# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Truncated Birkhoff normal form of the rescaled family at its saddle.

Near the origin the rescaled family is conjugate to
``N(x, y) = (Delta(xy) x, Delta(xy)**-1 y)``. The change of coordinates
is built degree by degree in the eigenframe of the saddle; the only
monomials left in the conjugated map are the resonant ones
``x (xy)**m`` in the first and ``y (xy)**m`` in the second component.

Polynomials in two variables are dense ``(D + 1, D + 1)`` coefficient
tables, entry ``[i, j]`` multiplying ``x**i y**j``, truncated at total
degree ``D = 2M + 1``.

.. code-block:: python

    from stochastic_sea.maps import RescaledParams
    from stochastic_sea.normalform import birkhoff_normalize

    change, series = birkhoff_normalize(RescaledParams.from_h(1.0), order=3)
    series.delta(0.01), change((0.05, 0.02))
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.signal import convolve2d
from scipy.stats import linregress

from .errors import DomainError, NormalFormError
from .maps import RescaledParams, rescaled_apply, rescaled_saddle

logger = logging.getLogger(__name__)

RESONANCE_FLOOR = 1e-10

PolyMap = tuple[np.ndarray, np.ndarray]


def _mask(degree: int) -> np.ndarray:
    i, j = np.indices((degree + 1, degree + 1))
    return i + j <= degree


def truncate(p: np.ndarray, degree: int) -> np.ndarray:
    """Drop every monomial of total degree above ``degree``."""
    out = np.zeros((degree + 1, degree + 1))
    n = min(p.shape[0], degree + 1)
    m = min(p.shape[1], degree + 1)
    out[:n, :m] = p[:n, :m]
    out[~_mask(degree)] = 0.0
    return out


def multiply(a: np.ndarray, b: np.ndarray, degree: int) -> np.ndarray:
    """Truncated product of two polynomials."""
    return truncate(convolve2d(a, b), degree)


def one(degree: int) -> np.ndarray:
    """The constant polynomial 1."""
    p = np.zeros((degree + 1, degree + 1))
    p[0, 0] = 1.0
    return p


def linear(cx: float, cy: float, degree: int) -> np.ndarray:
    """The polynomial ``cx x + cy y``."""
    p = np.zeros((degree + 1, degree + 1))
    p[1, 0], p[0, 1] = cx, cy
    return p


def compose(p: np.ndarray, q: PolyMap, degree: int) -> np.ndarray:
    """Truncated ``p(q1(x, y), q2(x, y))`` for maps fixing the origin."""
    powers_x = [one(degree)]
    powers_y = [one(degree)]
    for _ in range(degree):
        powers_x.append(multiply(powers_x[-1], q[0], degree))
        powers_y.append(multiply(powers_y[-1], q[1], degree))
    result = np.zeros((degree + 1, degree + 1))
    for i, j in zip(*np.nonzero(p[: degree + 1, : degree + 1])):
        if i + j <= degree:
            result += p[i, j] * multiply(powers_x[i], powers_y[j], degree)
    return result


def compose_map(p: PolyMap, q: PolyMap, degree: int) -> PolyMap:
    """Truncated composition ``p o q`` of two polynomial maps."""
    return compose(p[0], q, degree), compose(p[1], q, degree)


def identity(degree: int) -> PolyMap:
    """The identity map."""
    return linear(1.0, 0.0, degree), linear(0.0, 1.0, degree)


def evaluate(p: PolyMap, point) -> tuple:
    """Evaluate a polynomial map."""
    x, y = point
    return P.polyval2d(x, y, p[0]), P.polyval2d(x, y, p[1])


def jacobian(p: PolyMap, point) -> np.ndarray:
    """Derivative of a polynomial map at a point."""
    x, y = point
    return np.array(
        [
            [P.polyval2d(x, y, P.polyder(c, axis=axis)) for axis in (0, 1)]
            for c in p
        ]
    )


def invert(p: PolyMap, degree: int) -> PolyMap:
    """Series reversion of a map tangent to the identity."""
    base = identity(degree)
    nonlinear = (p[0] - base[0], p[1] - base[1])
    inverse = base
    for _ in range(degree):
        shift = compose_map(nonlinear, inverse, degree)
        inverse = (base[0] - shift[0], base[1] - shift[1])
    return inverse


def _rescaled_polynomial(params: RescaledParams, degree: int) -> PolyMap:
    """The rescaled family as an exact quadratic polynomial map."""
    d = params.delta
    u = np.zeros((degree + 1, degree + 1))
    v = np.zeros((degree + 1, degree + 1))
    u[1, 0], u[0, 1] = 1.0 + 2.0 * d * d, d
    v[1, 0], v[0, 1] = 2.0 * d, 1.0
    if degree >= 2:
        u[2, 0] = -d * d
        v[2, 0] = -d
    return u, v


def _linear_map(matrix: np.ndarray, degree: int) -> PolyMap:
    return (
        linear(matrix[0, 0], matrix[0, 1], degree),
        linear(matrix[1, 0], matrix[1, 1], degree),
    )


def _apply_linear(matrix: np.ndarray, p: PolyMap) -> PolyMap:
    return (
        matrix[0, 0] * p[0] + matrix[0, 1] * p[1],
        matrix[1, 0] * p[0] + matrix[1, 1] * p[1],
    )


@dataclass
class NormalFormSeries:
    """Coefficients ``[lambda, a_1, ..., a_M]`` of ``Delta(s)``."""

    h: float
    order: int
    coefficients: list[float]
    stable_coefficients: list[float] = field(default_factory=list)
    s0: float = 0.05

    @property
    def lam(self) -> float:
        """``Delta(0) = exp(h)``."""
        return self.coefficients[0]

    def _check(self, s, strict: bool) -> None:
        if np.any(np.abs(s) > self.s0):
            if strict:
                raise DomainError(f"|s| exceeds the working radius {self.s0}")
            logger.warning("Delta evaluated beyond the working radius %g", self.s0)

    def delta(self, s, strict: bool = False):
        """Evaluate ``Delta(s)``."""
        self._check(s, strict)
        return P.polyval(s, self.coefficients)

    def derivative(self, s, order: int = 1, strict: bool = False):
        """First or second derivative of ``Delta``."""
        if order not in (1, 2):
            raise DomainError("Only first and second derivatives are available")
        self._check(s, strict)
        return P.polyval(s, P.polyder(self.coefficients, order))

    def power(self, s, exponent: float, strict: bool = False):
        """``Delta(s)**exponent``."""
        return self.delta(s, strict) ** exponent

    def inverse_consistency(self) -> float:
        """Largest gap between the stable-component series and ``1/Delta``."""
        if not self.stable_coefficients:
            return 0.0
        n = len(self.stable_coefficients)
        reciprocal = [1.0 / self.coefficients[0]]
        for k in range(1, n):
            total = sum(
                self.coefficients[j] * reciprocal[k - j]
                for j in range(1, min(k, len(self.coefficients) - 1) + 1)
            )
            reciprocal.append(-total / self.coefficients[0])
        return float(np.max(np.abs(np.array(self.stable_coefficients) - reciprocal)))

    def scaled(self, sigma: float) -> NormalFormSeries:
        """Series in coordinates whose product is ``xy / sigma``."""
        factors = [sigma**m for m in range(len(self.coefficients))]
        return NormalFormSeries(
            self.h,
            self.order,
            [c * f for c, f in zip(self.coefficients, factors)],
            [c * sigma**m for m, c in enumerate(self.stable_coefficients)],
            self.s0 / abs(sigma),
        )

    def to_dict(self) -> dict:
        """Serialize the series."""
        return {
            "h": self.h,
            "order": self.order,
            "coefficients": list(map(float, self.coefficients)),
            "stableCoefficients": list(map(float, self.stable_coefficients)),
            "s0": self.s0,
        }

    @classmethod
    def from_dict(cls, data: dict) -> NormalFormSeries:
        """Create a series from its JSON form."""
        return cls(
            data["h"],
            data["order"],
            list(data["coefficients"]),
            list(data.get("stableCoefficients", [])),
            data.get("s0", 0.05),
        )


@dataclass
class NormalFormChange:
    """Polynomial change ``C`` with ``C F C**-1 = N`` up to degree ``D``."""

    degree: int
    forward: PolyMap
    inverse: PolyMap
    radius: float = 0.2

    def __call__(self, point):
        """Normal-form coordinates of ``point``."""
        return evaluate(self.forward, point)

    def inverse_apply(self, point):
        """Original coordinates of a normal-form point."""
        return evaluate(self.inverse, point)

    def jacobian(self, point) -> np.ndarray:
        """Derivative of the change."""
        return jacobian(self.forward, point)

    def inverse_jacobian(self, point) -> np.ndarray:
        """Derivative of the inverse change."""
        return jacobian(self.inverse, point)

    def inverse_defect(self, points: Sequence) -> float:
        """Largest ``|C**-1(C(p)) - p|`` over ``points``."""
        worst = 0.0
        for point in points:
            back = self.inverse_apply(self(point))
            worst = max(worst, abs(back[0] - point[0]), abs(back[1] - point[1]))
        return float(worst)

    def scaled(self, sigma_x: float, sigma_y: float) -> NormalFormChange:
        """Compose with ``(x, y) -> (x / sigma_x, y / sigma_y)``."""
        i, j = np.indices(self.inverse[0].shape)
        stretch = sigma_x**i * sigma_y**j
        return NormalFormChange(
            self.degree,
            (self.forward[0] / sigma_x, self.forward[1] / sigma_y),
            (self.inverse[0] * stretch, self.inverse[1] * stretch),
            self.radius,
        )

    def to_dict(self) -> dict:
        """Serialize the change."""
        return {
            "degree": self.degree,
            "radius": self.radius,
            "forward": [c.tolist() for c in self.forward],
            "inverse": [c.tolist() for c in self.inverse],
        }

    @classmethod
    def from_dict(cls, data: dict) -> NormalFormChange:
        """Create a change from its JSON form."""
        forward = tuple(np.array(c, dtype=float) for c in data["forward"])
        inverse = tuple(np.array(c, dtype=float) for c in data["inverse"])
        return cls(data["degree"], forward, inverse, data.get("radius", 0.2))


def _resonant(component: int, i: int, j: int) -> bool:
    return i - j == (1 if component == 0 else -1)


def birkhoff_normalize(
    params: RescaledParams, order: int = 3, radius: float = 0.2, s0: float = 0.05
) -> tuple[NormalFormChange, NormalFormSeries]:
    """Normalize the rescaled family up to ``x (xy)**order``.

    :param params: Parameters of the family.
    :param order: Highest power ``M`` of ``s = xy`` kept in ``Delta``.
    :return: The change of coordinates and the ``Delta`` series.
    :raises NormalFormError: on a small divisor.
    """
    if order < 0:
        raise DomainError("Normal form order must be non-negative")
    degree = 2 * order + 1
    saddle = rescaled_saddle(params)
    frame = np.column_stack([saddle.unstable, saddle.stable])
    frame_inverse = np.linalg.inv(frame)
    lam = params.lam
    eigenvalues = (lam, 1.0 / lam)

    family = _rescaled_polynomial(params, degree)
    framed = compose_map(family, _linear_map(frame, degree), degree)
    in_frame = _apply_linear(frame_inverse, framed)

    phi = identity(degree)
    normal = (linear(lam, 0.0, degree), linear(0.0, 1.0 / lam, degree))
    for d in range(2, degree + 1):
        lhs = compose_map(phi, in_frame, degree)
        rhs = compose_map(normal, phi, degree)
        for k in (0, 1):
            remainder = lhs[k] - rhs[k]
            for i in range(d + 1):
                j = d - i
                if _resonant(k, i, j):
                    normal[k][i, j] = remainder[i, j]
                    continue
                divisor = eigenvalues[k] - lam ** (i - j)
                if abs(divisor) < RESONANCE_FLOOR:
                    raise NormalFormError(
                        f"Small divisor {divisor:.3g} at x^{i} y^{j}",
                        stage="normal form",
                    )
                phi[k][i, j] = remainder[i, j] / divisor
        logger.debug("Normalized degree %d", d)

    forward = compose_map(phi, _linear_map(frame_inverse, degree), degree)
    inverse = compose_map(_linear_map(frame, degree), invert(phi, degree), degree)
    change = NormalFormChange(degree, forward, inverse, radius)
    series = NormalFormSeries(
        params.h,
        order,
        [lam] + [float(normal[0][m + 1, m]) for m in range(1, order + 1)],
        [1.0 / lam] + [float(normal[1][m, m + 1]) for m in range(1, order + 1)],
        s0,
    )
    logger.info(
        "Birkhoff normal form at h = %g: Delta = %s", params.h, series.coefficients
    )
    return change, series


def delta_eval(series: NormalFormSeries, s, strict: bool = False):
    """``Delta(s)``; beyond ``s0`` a warning is logged or, if strict, raised."""
    return series.delta(s, strict)


def delta_deriv(series: NormalFormSeries, s, order: int = 1, strict: bool = False):
    """Exact first or second derivative of ``Delta``."""
    return series.derivative(s, order, strict)


def normal_apply(series: NormalFormSeries, point):
    """``N(x, y) = (Delta(xy) x, y / Delta(xy))``."""
    x, y = point
    value = P.polyval(x * y, series.coefficients)
    return value * x, y / value


def normal_inverse(series: NormalFormSeries, point):
    """Inverse of :func:`normal_apply`; ``xy`` is invariant."""
    x, y = point
    value = P.polyval(x * y, series.coefficients)
    return x / value, value * y


def _circle(radius: float, count: int = 64) -> np.ndarray:
    angle = 2.0 * np.pi * np.arange(count) / count
    return radius * np.column_stack([np.cos(angle), np.sin(angle)])


def conjugacy_residual(
    change: NormalFormChange,
    series: NormalFormSeries,
    params: RescaledParams,
    radius: float,
) -> float:
    """Largest ``|C(F(p)) - N(C(p))|`` on the circle of ``radius``."""
    worst = 0.0
    for point in _circle(radius):
        left = change(rescaled_apply(params, point))
        right = normal_apply(series, change(point))
        worst = max(worst, abs(left[0] - right[0]), abs(left[1] - right[1]))
    return float(worst)


def residual_slope(
    params: RescaledParams, order: int = 3, radii: Sequence[float] = (0.1, 0.05, 0.025)
) -> float:
    """Log-log slope of the conjugacy residual against the radius."""
    change, series = birkhoff_normalize(params, order)
    residuals = [conjugacy_residual(change, series, params, r) for r in radii]
    fit = linregress(np.log(radii), np.log(residuals))
    return float(fit.slope)


def nonresonant_defect(
    change: NormalFormChange, series: NormalFormSeries, params: RescaledParams
) -> float:
    """Largest non-resonant coefficient of ``C F C**-1`` up to degree ``D``."""
    degree = change.degree
    family = _rescaled_polynomial(params, degree)
    pulled = compose_map(family, change.inverse, degree)
    conjugated = compose_map(change.forward, pulled, degree)
    worst = 0.0
    for k in (0, 1):
        for i, j in zip(*np.nonzero(_mask(degree))):
            if i + j >= 1 and not _resonant(k, i, j):
                worst = max(worst, abs(conjugated[k][i, j]))
    return float(worst)


@dataclass
class DeltaEstimate:
    """Sampled bounds behind ``log Delta >= h/C`` and ``|Delta'|, |Delta''| <= C h``."""

    h: float
    min_log_delta: float
    max_first: float
    max_second: float

    def to_dict(self) -> dict:
        """Serialize the estimate."""
        return {
            "h": self.h,
            "minLogDelta": self.min_log_delta,
            "maxFirst": self.max_first,
            "maxSecond": self.max_second,
        }


def delta_estimates(series: NormalFormSeries, samples: int = 101) -> DeltaEstimate:
    """Sample ``Delta`` and its derivatives on ``[0, s0]``."""
    s = np.linspace(0.0, series.s0, samples)
    return DeltaEstimate(
        series.h,
        float(np.min(np.log(series.delta(s)))),
        float(np.max(np.abs(series.derivative(s, 1)))),
        float(np.max(np.abs(series.derivative(s, 2)))) if series.order >= 2 else 0.0,
    )


def derivative_scaling(hs: Sequence[float], order: int = 3, s0: float = 0.05) -> float:
    """Log-log slope of ``max |Delta'|`` against ``h``."""
    maxima = []
    for h in hs:
        _, series = birkhoff_normalize(RescaledParams.from_h(h), order, s0=s0)
        maxima.append(delta_estimates(series).max_first)
    return float(linregress(np.log(hs), np.log(maxima)).slope)


def local_radius(
    params: RescaledParams, order: int, tolerance: float, radius: Optional[float] = None
) -> float:
    """Largest radius, halving from ``radius``, with residual below ``tolerance``."""
    change, series = birkhoff_normalize(params, order)
    r = radius or change.radius
    while r > 1e-6:
        if conjugacy_residual(change, series, params, r) < tolerance:
            return r
        r /= 2.0
    raise NormalFormError(
        f"No radius reaches residual {tolerance:.3g}", stage="normal form"
    )

