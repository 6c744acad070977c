# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Area-preserving map families, coordinate changes and saddle data.

Families:

* the standard map ``f_k(x, y) = (x + y + k sin 2 pi x, y + k sin 2 pi x)``
  on the torus, plus its lift to the plane;
* the area-preserving Henon family ``H_a(x, y) = (y, -x + a - y**2)``;
* the quadratic family ``F_eps(x, y) = (x + y - x**2 + eps, y - x**2 + eps)``;
* the rescaled family ``F_h``, conjugate to ``F_{delta**4}`` by the affine
  change ``Upsilon_delta(u, v) = (delta**2 (u - 1), delta**3 v)``, which reads
  ``v' = v + delta g(u)``, ``u' = u + delta v'`` with ``g(u) = 2u - u**2``.

The planar map classes only use ring operations and :func:`sin`/:func:`cos`
on their arguments, so they evaluate equally on floats, numpy arrays,
mpmath numbers and truncated power series (:class:`TaylorSeries`).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import mpmath
import numpy as np
from scipy.optimize import brentq

from .errors import DomainError
from .precision import WorkingPrecision

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

MU_PREFACTOR = 16.0 * math.sqrt(2.0) * math.pi
"""``16 sqrt(2) pi``, the constant in front of the splitting size."""

DELTA_BRACKET = (1e-300, 10.0)


def _sin(x):
    if isinstance(x, TaylorSeries):
        return x.sin_cos()[0]
    if isinstance(x, mpmath.mpf):
        return mpmath.sin(x)
    if isinstance(x, np.ndarray):
        return np.sin(x)
    return math.sin(x)


def _cos(x):
    if isinstance(x, TaylorSeries):
        return x.sin_cos()[1]
    if isinstance(x, mpmath.mpf):
        return mpmath.cos(x)
    if isinstance(x, np.ndarray):
        return np.cos(x)
    return math.cos(x)


def _two_pi(x):
    return 2 * mpmath.pi if isinstance(x, mpmath.mpf) else TWO_PI


def mod_one(x):
    """Reduce into ``[0, 1)`` with ``floor``."""
    x = np.asarray(x, dtype=float)
    r = x - np.floor(x)
    r = np.where(r >= 1.0, 0.0, r)
    return r if r.ndim else float(r)


class TaylorSeries:
    """Univariate power series truncated after ``order``.

    Coefficients are generic scalars (floats or mpmath numbers).
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[Any]):
        """Store the coefficients ``c_0 .. c_N``."""
        self.coefficients = list(coefficients)

    @classmethod
    def constant(cls, value, order: int) -> TaylorSeries:
        """The constant series."""
        return cls([value] + [0 * value] * order)

    @classmethod
    def variable(cls, order: int, zero=0.0, one=1.0) -> TaylorSeries:
        """The series of the variable itself."""
        coefficients = [zero] * (order + 1)
        if order >= 1:
            coefficients[1] = one
        return cls(coefficients)

    @property
    def order(self) -> int:
        """Truncation order."""
        return len(self.coefficients) - 1

    def __getitem__(self, k: int):
        """Coefficient of ``s**k``."""
        return self.coefficients[k]

    def _coerce(self, other) -> TaylorSeries:
        if isinstance(other, TaylorSeries):
            return other
        return TaylorSeries.constant(other, self.order)

    def __add__(self, other):
        """Termwise sum; scalars add to the constant term."""
        other = self._coerce(other)
        pairs = zip(self.coefficients, other.coefficients)
        return TaylorSeries([a + b for a, b in pairs])

    __radd__ = __add__

    def __neg__(self):
        """Termwise negation."""
        return TaylorSeries([-a for a in self.coefficients])

    def __sub__(self, other):
        """Difference of two series or of a series and a scalar."""
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        """Scalar minus series."""
        return self._coerce(other) - self

    def __mul__(self, other):
        """Cauchy product truncated at the lower order."""
        if not isinstance(other, TaylorSeries):
            return TaylorSeries([a * other for a in self.coefficients])
        n = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        return TaylorSeries(
            [sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(n + 1)]
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a scalar."""
        if isinstance(other, TaylorSeries):
            raise TypeError("Series division is not supported")
        return TaylorSeries([a / other for a in self.coefficients])

    def __pow__(self, exponent: int):
        """Non-negative integer power by repeated products."""
        if exponent != int(exponent) or exponent < 0:
            raise TypeError("Only non-negative integer powers are supported")
        result = TaylorSeries.constant(1 + 0 * self.coefficients[0], self.order)
        for _ in range(int(exponent)):
            result = result * self
        return result

    def sin_cos(self) -> tuple[TaylorSeries, TaylorSeries]:
        """Series of ``sin`` and ``cos`` of this series."""
        f = self.coefficients
        s = [_sin(f[0])]
        c = [_cos(f[0])]
        for k in range(1, self.order + 1):
            s.append(sum(j * f[j] * c[k - j] for j in range(1, k + 1)) / k)
            c.append(-sum(j * f[j] * s[k - j] for j in range(1, k + 1)) / k)
        return TaylorSeries(s), TaylorSeries(c)

    def __call__(self, xi):
        """Evaluate by Horner's rule."""
        result = 0 * xi
        for coefficient in reversed(self.coefficients):
            result = result * xi + coefficient
        return result

    def derivative(self) -> TaylorSeries:
        """Termwise derivative, keeping the truncation order."""
        coefficients = [k * c for k, c in enumerate(self.coefficients)][1:]
        return TaylorSeries(coefficients + [0 * self.coefficients[0]])


@dataclass(frozen=True)
class StandardMapParams:
    """Coupling of the standard map."""

    k: float


@dataclass(frozen=True)
class HenonParams:
    """Parameter of the Henon family."""

    a: float


@dataclass(frozen=True)
class QuadraticParams:
    """Parameter of the quadratic family."""

    eps: float

    def __post_init__(self):
        """Reject negative parameters."""
        if self.eps < 0:
            raise DomainError(f"eps must be non-negative, got {self.eps}")


@dataclass(frozen=True)
class AffineChange:
    """The coordinate change ``Upsilon_delta``."""

    delta: float

    def __post_init__(self):
        """Reject non-positive scales."""
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta}")


@dataclass(frozen=True)
class RescaledParams:
    """Parameters ``h``, ``delta`` and ``lambda = exp(h)`` of the rescaled family."""

    h: float
    delta: float
    lam: float

    @classmethod
    def from_h(cls, h: float) -> RescaledParams:
        """Build from the Lyapunov exponent."""
        return cls(h, delta_of_h(h), math.exp(h))

    @classmethod
    def from_delta(cls, delta: float) -> RescaledParams:
        """Build from the scale ``delta``."""
        lam = lambda_of_delta(delta)
        return cls(math.log(lam), delta, lam)

    def to_dict(self) -> dict:
        """Serialize the parameters."""
        return {"h": self.h, "delta": self.delta, "lambda": self.lam}


@dataclass
class JacobianSample:
    """Entries of ``Df`` at ``point`` and, optionally, their partials."""

    a: float
    b: float
    c: float
    d: float
    point: tuple[float, float] = (0.0, 0.0)
    partials: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_matrix(cls, matrix, point=(0.0, 0.0)) -> JacobianSample:
        """Build from a 2x2 matrix."""
        (a, b), (c, d) = matrix
        where = tuple(float(p) for p in point)
        return cls(float(a), float(b), float(c), float(d), where)

    @property
    def det(self) -> float:
        """Determinant ``ad - bc``."""
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self) -> np.ndarray:
        """The 2x2 matrix."""
        return np.array([[self.a, self.b], [self.c, self.d]])


@dataclass
class SaddleData:
    """Eigendata of a hyperbolic fixed point."""

    location: tuple[float, float]
    lam: float
    unstable: np.ndarray
    stable: np.ndarray

    @property
    def h(self) -> float:
        """Lyapunov exponent ``log(lambda)``."""
        return math.log(self.lam)

    def to_dict(self) -> dict:
        """Serialize the saddle."""
        return {
            "location": [float(c) for c in self.location],
            "lambda": self.lam,
            "h": self.h,
            "unstable": [float(c) for c in self.unstable],
            "stable": [float(c) for c in self.stable],
        }


@dataclass(frozen=True)
class MuValue:
    """The splitting size, with its logarithm when it underflows."""

    value: Any
    log_value: float
    underflow: bool = False

    def to_dict(self) -> dict:
        """Serialize the value."""
        return {
            "value": float(self.value),
            "logValue": self.log_value,
            "underflow": self.underflow,
        }


def std_lift(p: StandardMapParams, point):
    """Standard map on the plane, without reduction."""
    x, y = point
    kick = p.k * _sin(_two_pi(x) * x)
    y1 = y + kick
    return x + y1, y1


def std_apply(p: StandardMapParams, point):
    """Standard map reduced mod 1 in both coordinates."""
    x, y = std_lift(p, point)
    return mod_one(x), mod_one(y)


def std_inverse(p: StandardMapParams, point):
    """Inverse of the standard map, reduced mod 1."""
    x1, y1 = point
    x = x1 - y1
    y = y1 - p.k * _sin(_two_pi(x) * x)
    return mod_one(x), mod_one(y)


def std_jacobian(p: StandardMapParams, point) -> JacobianSample:
    """Analytic Jacobian of the standard map."""
    x, _ = point
    shear = TWO_PI * p.k * math.cos(TWO_PI * x)
    return JacobianSample(1.0 + shear, 1.0, shear, 1.0, tuple(point))


def henon_apply(p: HenonParams, point):
    """Henon map ``(x, y) -> (y, -x + a - y**2)``."""
    x, y = point
    return y, -x + p.a - y * y


def henon_inverse(p: HenonParams, point):
    """Inverse Henon map ``(x, y) -> (a - x**2 - y, x)``."""
    x, y = point
    return p.a - x * x - y, x


def henon_jacobian(p: HenonParams, point) -> JacobianSample:
    """Analytic Jacobian of the Henon map."""
    _, y = point
    return JacobianSample(0.0, 1.0, -1.0, -2.0 * y, tuple(point))


@dataclass(frozen=True)
class FixedPoint:
    """A fixed point with its trace and type."""

    point: tuple[float, float]
    trace: float
    classification: str

    def to_dict(self) -> dict:
        """Serialize the fixed point."""
        return {
            "point": list(self.point),
            "trace": self.trace,
            "classification": self.classification,
        }


def classify_trace(trace: float, tol: float = 1e-12) -> str:
    """Elliptic, parabolic or saddle, from the trace of a symplectic matrix."""
    if abs(abs(trace) - 2.0) <= tol:
        return "parabolic"
    return "elliptic" if abs(trace) < 2.0 else "saddle"


def henon_fixed_points(p: HenonParams) -> list[FixedPoint]:
    """Fixed points ``x = y`` with ``x**2 + 2x - a = 0``.

    For ``a = -1`` the single degenerate fixed point sits at ``(-1, -1)``.
    """
    discriminant = 1.0 + p.a
    if discriminant < 0:
        return []
    if discriminant == 0:
        roots = [-1.0]
    else:
        root = math.sqrt(discriminant)
        roots = [-1.0 + root, -1.0 - root]
    return [FixedPoint((x, x), -2.0 * x, classify_trace(-2.0 * x)) for x in roots]


def quad_apply(p: QuadraticParams, point):
    """Quadratic map ``(x + y - x**2 + eps, y - x**2 + eps)``."""
    x, y = point
    y1 = y - x * x + p.eps
    return x + y1, y1


def quad_inverse(p: QuadraticParams, point):
    """Inverse of the quadratic map."""
    x1, y1 = point
    x = x1 - y1
    return x, y1 + x * x - p.eps


def quad_jacobian(p: QuadraticParams, point) -> JacobianSample:
    """Analytic Jacobian of the quadratic map."""
    x, _ = point
    return JacobianSample(1.0 - 2.0 * x, 1.0, -2.0 * x, 1.0, tuple(point))


def upsilon(change: AffineChange, point):
    """``Upsilon_delta(u, v) = (-delta**2 + delta**2 u, delta**3 v)``."""
    u, v = point
    d2 = change.delta**2
    return -d2 + d2 * u, d2 * change.delta * v


def upsilon_inverse(change: AffineChange, point):
    """Inverse of :func:`upsilon`."""
    x, y = point
    d2 = change.delta**2
    return 1.0 + x / d2, y / (d2 * change.delta)


def _g(u):
    return 2 * u - u * u


def rescaled_apply(p: RescaledParams, point):
    """One step of the rescaled family."""
    return RescaledMap(p.delta, p.lam)(point)


def rescaled_inverse(p: RescaledParams, point):
    """One backward step of the rescaled family."""
    return RescaledMap(p.delta, p.lam).inverse(point)


def rescaled_jacobian(p: RescaledParams, point) -> JacobianSample:
    """Analytic Jacobian of the rescaled family."""
    matrix = RescaledMap(p.delta, p.lam).jacobian(point)
    return JacobianSample.from_matrix(matrix, point)


def conjugacy_defect(p: RescaledParams, points) -> float:
    """Largest gap between ``F_h`` and ``Upsilon^-1 F_{delta**4} Upsilon``."""
    change = AffineChange(p.delta)
    quadratic = QuadraticParams(p.delta**4)
    worst = 0.0
    for point in points:
        direct = rescaled_apply(p, point)
        image = quad_apply(quadratic, upsilon(change, point))
        composed = upsilon_inverse(change, image)
        worst = max(worst, abs(direct[0] - composed[0]), abs(direct[1] - composed[1]))
    return worst


def lambda_of_delta(delta: float) -> float:
    """Unstable eigenvalue ``1 + delta**2 + sqrt(delta**4 + 2 delta**2)``."""
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    d2 = delta * delta
    return 1.0 + d2 + math.sqrt(d2 * d2 + 2.0 * d2)


def delta_of_h(h: float) -> float:
    """Invert ``h = log(lambda_of_delta(delta))`` by a bracketed root find.

    The search starts from ``[c/2, 2c]`` around the closed form
    ``c = (e**h - 1) / sqrt(2 e**h)`` and polishes it; the whole of
    :data:`DELTA_BRACKET` is searched only if that bracket fails.
    """
    if not h > 0:
        raise DomainError(f"h must be positive, got {h}")

    def residual(delta: float) -> float:
        return math.log(lambda_of_delta(delta)) - h

    if residual(DELTA_BRACKET[1]) < 0:
        raise DomainError(f"h = {h} exceeds the supported range")
    closed = math.expm1(h) / math.sqrt(2.0 * math.exp(h))
    lo = max(closed / 2.0, DELTA_BRACKET[0])
    hi = min(2.0 * closed, DELTA_BRACKET[1])
    if not residual(lo) < 0 < residual(hi):
        logger.debug(
            "Closed-form bracket fails at h = %g; searching %s", h, DELTA_BRACKET
        )
        lo, hi = DELTA_BRACKET
    return brentq(
        residual, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500
    )


def mu(
    h: float, theta1: float = 1.0, prec: Optional[WorkingPrecision] = None
) -> MuValue:
    """Splitting size ``16 sqrt(2) pi |theta1| h**-7 exp(-2 pi**2 / h)``.

    The value is computed through its logarithm; in double precision a
    result below the smallest normal float is flagged as underflow.
    """
    if not h > 0:
        raise DomainError(f"h must be positive, got {h}")
    if not theta1 > 0:
        raise DomainError(f"theta1 must be positive, got {theta1}")
    prec = prec or WorkingPrecision()
    with prec.context():
        log_value = (
            prec.log(16 * prec.sqrt(prec.num(2)) * prec.pi)
            + prec.log(prec.num(theta1))
            - 7 * prec.log(prec.num(h))
            - 2 * prec.pi**2 / prec.num(h)
        )
        if prec.extended:
            return MuValue(prec.exp(log_value), float(log_value))
    log_value = float(log_value)
    if log_value < math.log(np.finfo(float).tiny):
        logger.warning("mu(h=%g) underflows double precision", h)
        return MuValue(0.0, log_value, underflow=True)
    return MuValue(math.exp(log_value), log_value)


class PlanarMap:
    """A planar diffeomorphism evaluated on generic scalars."""

    name = "planar"

    def __call__(self, point):
        """Image of ``point``."""
        raise NotImplementedError

    def inverse(self, point):
        """Preimage of ``point``."""
        raise NotImplementedError

    def jacobian(self, point) -> np.ndarray:
        """Derivative at ``point`` as a 2x2 array."""
        raise NotImplementedError

    def on_series(self, series: tuple[TaylorSeries, TaylorSeries]):
        """Image of a parametrized curve given by two power series."""
        return self(series)

    def iterate(self, point, steps: int):
        """Apply the map ``steps`` times (the inverse for negative steps)."""
        step = self if steps >= 0 else self.inverse
        for _ in range(abs(steps)):
            point = step(point)
        return point


@dataclass
class RescaledMap(PlanarMap):
    """The rescaled family with its reversing involution."""

    delta: Any
    lam: Any

    name = "rescaled"

    @classmethod
    def from_params(
        cls, params: RescaledParams, prec: Optional[WorkingPrecision] = None
    ) -> RescaledMap:
        """Recompute ``delta`` and ``lambda`` in the working precision."""
        prec = prec or WorkingPrecision()
        if not prec.extended:
            return cls(params.delta, params.lam)
        with prec.context():
            lam = prec.exp(prec.num(params.h))
            return cls((lam - 1) / prec.sqrt(2 * lam), lam)

    def __call__(self, point):
        """One step of the map."""
        u, v = point
        v1 = v + self.delta * _g(u)
        return u + self.delta * v1, v1

    def inverse(self, point):
        """One backward step."""
        u1, v1 = point
        u = u1 - self.delta * v1
        return u, v1 - self.delta * _g(u)

    def jacobian(self, point) -> np.ndarray:
        """Derivative at ``point``."""
        u, _ = point
        dg = self.delta * (2 - 2 * u)
        matrix = [[1 + self.delta * dg, self.delta], [dg, 1]]
        return np.array(matrix, dtype=object).astype(float)

    def involution(self, point):
        """Reversing symmetry ``R(u, v) = (u - delta v, -v)``."""
        u, v = point
        return u - self.delta * v, -v

    def involution_matrix(self) -> np.ndarray:
        """Derivative of :meth:`involution`."""
        return np.array([[1.0, -float(self.delta)], [0.0, -1.0]])


@dataclass
class StandardMapLift(PlanarMap):
    """The standard map on the universal cover."""

    k: Any

    name = "standard"

    def __call__(self, point):
        """One step of the map."""
        return std_lift(StandardMapParams(self.k), point)

    def inverse(self, point):
        """One backward step."""
        x1, y1 = point
        x = x1 - y1
        return x, y1 - self.k * _sin(_two_pi(x) * x)

    def jacobian(self, point) -> np.ndarray:
        """Derivative at ``point``."""
        params = StandardMapParams(float(self.k))
        return std_jacobian(params, (float(point[0]), 0.0)).matrix

    def on_series(self, series):
        """One step applied to a pair of Taylor series."""
        x, y = series
        kick = self.k * _sin(x * _two_pi(x[0]))
        y1 = y + kick
        return x + y1, y1


@dataclass
class HenonMap(PlanarMap):
    """Henon family as a planar map object."""

    a: Any

    name = "henon"

    def __call__(self, point):
        """One step of the map."""
        return henon_apply(HenonParams(self.a), point)

    def inverse(self, point):
        """One backward step."""
        return henon_inverse(HenonParams(self.a), point)

    def jacobian(self, point) -> np.ndarray:
        """Derivative at ``point``."""
        return henon_jacobian(HenonParams(self.a), (0.0, float(point[1]))).matrix


@dataclass
class QuadraticMap(PlanarMap):
    """Quadratic family as a planar map object."""

    eps: Any

    name = "quadratic"

    def __call__(self, point):
        """One step of the map."""
        return quad_apply(QuadraticParams(self.eps), point)

    def inverse(self, point):
        """One backward step."""
        return quad_inverse(QuadraticParams(self.eps), point)

    def jacobian(self, point) -> np.ndarray:
        """Derivative at ``point``."""
        params = QuadraticParams(float(self.eps))
        return quad_jacobian(params, (float(point[0]), 0.0)).matrix


def _unit(vector) -> np.ndarray:
    vector = np.asarray(vector, dtype=float)
    vector = vector / np.hypot(vector[0], vector[1])
    return -vector if vector[0] < 0 or (vector[0] == 0 and vector[1] < 0) else vector


def saddle_data(planar_map: PlanarMap, location) -> SaddleData:
    """Eigendata of the fixed point ``location`` of ``planar_map``.

    :raises DomainError: if the point is not an orientation-preserving saddle.
    """
    matrix = planar_map.jacobian(location)
    trace = float(np.trace(matrix))
    if abs(trace) <= 2.0:
        raise DomainError(
            f"Fixed point {tuple(location)} is not hyperbolic (trace {trace})"
        )
    if trace < 0:
        raise DomainError("Saddles with negative eigenvalues are not supported")
    values, vectors = np.linalg.eig(matrix)
    order = np.argsort(np.abs(values))
    stable, unstable = order[0], order[1]
    return SaddleData(
        (float(location[0]), float(location[1])),
        float(np.real(values[unstable])),
        _unit(np.real(vectors[:, unstable])),
        _unit(np.real(vectors[:, stable])),
    )


def rescaled_saddle(params: RescaledParams) -> SaddleData:
    """Closed-form eigendata of the saddle of ``F_h`` at the origin."""
    delta, lam = params.delta, params.lam
    d2 = delta * delta
    return SaddleData(
        (0.0, 0.0),
        lam,
        _unit((delta, lam - 1.0 - 2.0 * d2)),
        _unit((delta, 1.0 / lam - 1.0 - 2.0 * d2)),
    )
