# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Separatrices of the rescaled family and the size of their splitting.

As ``h -> 0`` the rescaled family approaches the time-``delta`` map of the
conservative field ``x' = y, y' = 2x - x**2``, whose separatrix loop
``x(t) = 3 sech(t / sqrt 2)**2`` is known in closed form. For ``h > 0``
the invariant manifolds of the saddle split; the splitting is measured by
the area of the lobe between two consecutive primary homoclinic points.

Manifolds are parametrized by ``P(lambda xi) = F(P(xi))``: a polynomial
jet is solved order by order and then pushed out with the map. The stable
manifold of the rescaled family is the image of the unstable one under the
reversor ``R(u, v) = (u - delta v, -v)``, so the primary homoclinic points
lie on ``Fix(R)`` and on ``Fix(F R)``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import fsolve
from scipy.spatial.distance import directed_hausdorff
from scipy.stats import linregress
from scipy.stats import t as student_t

from .errors import (
    ConvergenceError,
    DomainError,
    GeometryError,
    InsufficientPrecision,
    IntegrationError,
    PrecisionRefusal,
)
from .maps import (
    PlanarMap,
    RescaledMap,
    RescaledParams,
    SaddleData,
    TaylorSeries,
    mu,
    rescaled_saddle,
)
from .precision import DOUBLE_BITS, WorkingPrecision
from .utils import acute_angle, cross2, parallel_map

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)

EXTENDED_BITS = 128
"""Smallest significand used between the double and the refusal ranges."""

DOUBLE_H = 0.7
REFUSAL_H = 0.35

MAX_TURN = 0.05
"""Largest angle between adjacent chords of a sampled polyline."""

STENCIL_STEP = 1e-5

LOBE_TOLERANCE = 0.02
"""Largest disagreement of the lobe and action areas, relative to the lobe area."""

CSV_COLUMNS = ["h", "angle", "lobe_area", "accuracy", "precision_bits"]


def vf_eval(point) -> tuple[float, float]:
    """Vector field ``(y, 2x - x**2)``."""
    x, y = point
    return y, 2.0 * x - x * x


def energy(point) -> float:
    """First integral ``y**2/2 - x**2 + x**3/3``; zero on the separatrix."""
    x, y = point
    return 0.5 * y * y - x * x + x**3 / 3.0


def closed_form(t) -> tuple[np.ndarray, np.ndarray]:
    """Separatrix loop ``(3 sech**2, -3 sqrt2 sech**2 tanh)`` at times ``t``."""
    s = np.asarray(t, dtype=float) / SQRT2
    sech2 = 1.0 / np.cosh(s) ** 2
    return 3.0 * sech2, -3.0 * SQRT2 * sech2 * np.tanh(s)


def closed_form_residual(ts: Sequence[float], step: float = STENCIL_STEP) -> float:
    """Largest defect of the closed form in the differential equation.

    Time derivatives use the five-point central stencil.
    """
    ts = np.asarray(ts, dtype=float)
    offsets = np.array([-2.0, -1.0, 1.0, 2.0]) * step
    weights = np.array([1.0, -8.0, 8.0, -1.0]) / (12.0 * step)
    x, y = closed_form(ts)
    shifted = [closed_form(ts + o) for o in offsets]
    dx = sum(w * s[0] for w, s in zip(weights, shifted))
    dy = sum(w * s[1] for w, s in zip(weights, shifted))
    fx, fy = vf_eval((x, y))
    return float(np.max(np.maximum(np.abs(dx - fx), np.abs(dy - fy))))


@dataclass
class Trajectory:
    """Dense samples of a flow line."""

    t: np.ndarray
    points: np.ndarray

    @property
    def end(self) -> np.ndarray:
        """Final point."""
        return self.points[-1]

    def energy_drift(self) -> float:
        """Largest change of the first integral along the samples."""
        values = energy(self.points.T)
        return float(np.max(np.abs(values - values[0])))


def integrate_flow(
    point, t_span: tuple[float, float], tol: float = 1e-12
) -> Trajectory:
    """Integrate the limiting vector field with an adaptive eighth-order scheme.

    :raises IntegrationError: if the step size underflows.
    """
    if not tol > 0:
        raise DomainError("Tolerance must be positive")
    rtol = max(tol * 1e-2, 2.5e-14)
    result = solve_ivp(
        lambda _, z: vf_eval(z),
        t_span,
        np.asarray(point, dtype=float),
        method="DOP853",
        rtol=rtol,
        atol=rtol * 1e-2,
    )
    if result.status == -1:
        raise IntegrationError(result.message, stage="flow")
    return Trajectory(result.t, result.y.T)


def hausdorff_to_closed_form(
    samples: np.ndarray, t_max: float = 20.0, count: int = 4001
) -> float:
    """Symmetric Hausdorff distance between a polyline and the separatrix loop."""
    x, y = closed_form(np.linspace(-t_max, t_max, count))
    loop = np.column_stack([x, y])
    samples = np.asarray(samples, dtype=float)
    return max(
        directed_hausdorff(samples, loop)[0], directed_hausdorff(loop, samples)[0]
    )


def _push(step: Callable, point, vector):
    """Image of a point and of a tangent vector, by a first-order series."""
    du = TaylorSeries([point[0], vector[0]])
    dv = TaylorSeries([point[1], vector[1]])
    image = step((du, dv))
    return (image[0][0], image[1][0]), (image[0][1], image[1][1])


def solve_jet(
    step: Callable, location, eigenvector, lam, order: int, prec: WorkingPrecision
) -> list[tuple[Any, Any]]:
    """Coefficients ``c_1 .. c_order`` of ``step(P(xi)) = P(lam xi)``.

    ``c_1`` is the eigenvector; at order ``k`` the coefficient solves
    ``(lam**k - A) c_k = [step(P_{<k})]_k``.
    """
    if order < 1:
        raise DomainError("Jet order must be at least 1")
    zero = prec.num(0)
    x0, y0 = prec.num(location[0]), prec.num(location[1])
    (a, c), (b, d) = _linear_columns(step, (x0, y0), prec)
    coefficients = [(prec.num(eigenvector[0]), prec.num(eigenvector[1]))]
    for k in range(2, order + 1):
        u = TaylorSeries([x0] + [cu for cu, _ in coefficients] + [zero])
        v = TaylorSeries([y0] + [cv for _, cv in coefficients] + [zero])
        image = step((u, v))
        r0, r1 = image[0][k], image[1][k]
        lk = lam**k
        det = (lk - a) * (lk - d) - b * c
        coefficients.append(
            (((lk - d) * r0 + b * r1) / det, (c * r0 + (lk - a) * r1) / det)
        )
    return coefficients


def _linear_columns(step: Callable, location, prec: WorkingPrecision):
    zero, one = prec.num(0), prec.num(1)
    _, first = _push(step, location, (one, zero))
    _, second = _push(step, location, (zero, one))
    return first, second


@dataclass
class Curve:
    """A parametrized planar curve with a sampled polyline."""

    parameters: np.ndarray = field(default_factory=lambda: np.empty(0))
    samples: np.ndarray = field(default_factory=lambda: np.empty((0, 2)))
    truncated: bool = False

    def point(self, xi):
        """Point at parameter ``xi``."""
        raise NotImplementedError

    def tangent(self, xi):
        """Derivative with respect to ``xi``."""
        raise NotImplementedError


@dataclass
class FunctionCurve(Curve):
    """A curve given by explicit point and tangent functions."""

    point_fn: Optional[Callable] = None
    tangent_fn: Optional[Callable] = None

    @classmethod
    def sampled(cls, point_fn, tangent_fn, parameters) -> FunctionCurve:
        """Build and sample at ``parameters``."""
        parameters = np.asarray(parameters, dtype=float)
        samples = np.array([point_fn(p) for p in parameters], dtype=float)
        return cls(parameters, samples, False, point_fn, tangent_fn)

    def point(self, xi):
        """Point at parameter ``xi``."""
        return self.point_fn(xi)

    def tangent(self, xi):
        """Tangent vector at parameter ``xi``."""
        return self.tangent_fn(xi)


@dataclass
class ManifoldCurve(Curve):
    """Invariant manifold of a saddle, parametrized by ``P(lam xi) = step(P(xi))``.

    The jet is valid for ``xi <= xi0``; larger parameters are reached by
    pulling back into ``(xi0/lam, xi0]`` and applying ``step``. A
    ``reflection`` maps a stored unstable manifold to a stable one.
    """

    side: str = "unstable"
    saddle: Optional[SaddleData] = None
    step: Optional[Callable] = None
    lam: Any = None
    location: tuple = (0.0, 0.0)
    coefficients: list = field(default_factory=list)
    xi0: Any = None
    defect: float = math.inf
    prec: WorkingPrecision = field(default_factory=WorkingPrecision)
    reflection: Optional[Callable] = None
    reflection_matrix: Optional[Sequence[Sequence[float]]] = None

    @property
    def order(self) -> int:
        """Order of the polynomial jet."""
        return len(self.coefficients)

    def jet(self, s):
        """Polynomial jet at ``s``."""
        u = v = 0 * s
        for cu, cv in reversed(self.coefficients):
            u = (u + cu) * s
            v = (v + cv) * s
        return self.location[0] + u, self.location[1] + v

    def jet_tangent(self, s):
        """Derivative of the jet."""
        u = v = 0 * s
        for k in range(self.order, 0, -1):
            cu, cv = self.coefficients[k - 1]
            u = u * s + k * cu
            v = v * s + k * cv
        return u, v

    def _pullback(self, xi):
        s, steps = xi, 0
        while abs(s) > self.xi0:
            s = s / self.lam
            steps += 1
        return s, steps

    def _base_point(self, xi):
        s, steps = self._pullback(xi)
        point = self.jet(s)
        for _ in range(steps):
            point = self.step(point)
        return point

    def _base_tangent(self, xi):
        s, steps = self._pullback(xi)
        point = self.jet(s)
        du, dv = self.jet_tangent(s)
        scale = self.lam**steps
        vector = (du / scale, dv / scale)
        for _ in range(steps):
            point, vector = _push(self.step, point, vector)
        return vector

    def point(self, xi):
        """Point at parameter ``xi``."""
        point = self._base_point(xi)
        return self.reflection(point) if self.reflection else point

    def tangent(self, xi):
        """Tangent vector at parameter ``xi``."""
        vector = self._base_tangent(xi)
        if self.reflection_matrix is None:
            return vector
        (a, b), (c, d) = self.reflection_matrix
        return a * vector[0] + b * vector[1], c * vector[0] + d * vector[1]

    def jet_defect(self, xi0=None, count: int = 16) -> float:
        """Largest ``|step(P(s)) - P(lam s)|`` over ``s`` in ``[xi0/lam, xi0]``."""
        xi0 = self.xi0 if xi0 is None else xi0
        worst = 0.0
        for j in range(count + 1):
            s = xi0 / self.lam * (self.lam ** (self.prec.num(j) / count))
            image = self.step(self.jet(s))
            target = self.jet(self.lam * s)
            worst = max(
                worst,
                float(abs(image[0] - target[0])),
                float(abs(image[1] - target[1])),
            )
        return worst

    def fundamental_domain(self, j: int) -> tuple[Any, Any]:
        """Parameter interval ``[xi0 lam**j, xi0 lam**(j+1)]``."""
        return self.xi0 * self.lam**j, self.xi0 * self.lam ** (j + 1)

    def to_dict(self) -> dict:
        """Serialize the jet and the sampled polyline."""
        return {
            "side": self.side,
            "order": self.order,
            "xi0": float(self.xi0),
            "defect": self.defect,
            "coefficients": [[float(cu), float(cv)] for cu, cv in self.coefficients],
            "parameters": [float(p) for p in self.parameters],
            "samples": [[float(x), float(y)] for x, y in self.samples],
            "truncated": self.truncated,
        }


def _defect_target(prec: WorkingPrecision) -> float:
    return min(1e-12, prec.epsilon * 1e4)


def choose_xi0(
    curve: ManifoldCurve, target: Optional[float] = None, start: float = 1.0
) -> None:
    """Halve ``xi0`` until the jet defect is below ``target``."""
    target = _defect_target(curve.prec) if target is None else target
    xi = curve.prec.num(start)
    for _ in range(200):
        defect = curve.jet_defect(xi)
        if defect < target:
            curve.xi0, curve.defect = xi, defect
            logger.debug("xi0 = %.3g with jet defect %.3g", float(xi), defect)
            return
        xi = xi / 2
    raise ConvergenceError(
        f"Jet defect stays above {target:.3g}",
        stage="manifold",
        trace=[float(xi), defect],
    )


def _turns(points: np.ndarray) -> np.ndarray:
    chords = np.diff(points, axis=0)
    angles = np.arctan2(chords[:, 1], chords[:, 0])
    turn = np.abs(np.diff(angles))
    return np.minimum(turn, 2.0 * np.pi - turn)


def sample_curve(
    curve: ManifoldCurve,
    arc_length: float,
    window: float,
    initial: int = 24,
    max_turn: float = MAX_TURN,
    max_passes: int = 30,
    max_domains: int = 400,
) -> None:
    """Sample fundamental domains until ``arc_length`` is covered.

    Each domain is refined where adjacent chords turn by more than
    ``max_turn``; leaving ``[-window, window]**2`` truncates the polyline.
    """
    parameters: list[float] = []
    points: list[np.ndarray] = []
    length, j = 0.0, 0
    log_lam = float(math.log(float(curve.lam)))
    xi0 = float(curve.xi0)

    def evaluate(grid: list[float]) -> np.ndarray:
        rows = []
        for g in grid:
            xi = curve.prec.num(xi0 * math.exp(log_lam * (j + g)))
            rows.append([float(c) for c in curve.point(xi)])
        return np.array(rows)

    while length < arc_length:
        grid = list(np.linspace(0.0, 1.0, initial + 1))
        pts = evaluate(grid)
        for _ in range(max_passes):
            bad = np.nonzero(_turns(pts) > max_turn)[0]
            if len(bad) == 0:
                break
            inserted = set()
            for i in bad:
                inserted.add((grid[i] + grid[i + 1]) / 2)
                inserted.add((grid[i + 1] + grid[i + 2]) / 2)
            grid = sorted(set(grid) | inserted)
            pts = evaluate(grid)
        else:
            logger.warning("Polyline turn limit not met in domain %d", j)
        start = 1 if parameters else 0
        parameters.extend(xi0 * math.exp(log_lam * (j + g)) for g in grid[start:])
        points.extend(pts[start:])
        length += float(np.sum(np.hypot(*np.diff(pts, axis=0).T)))
        j += 1
        if np.any(np.abs(pts) > window) or j >= max_domains:
            break

    samples = np.array(points)
    outside = np.nonzero(np.any(np.abs(samples) > window, axis=1))[0]
    if len(outside):
        cut = int(outside[0])
        samples, parameters = samples[:cut], parameters[:cut]
        curve.truncated = True
        logger.warning("%s manifold leaves the window; polyline truncated", curve.side)
    curve.parameters = np.array(parameters)
    curve.samples = samples


def manifold_of(
    planar_map: PlanarMap,
    saddle: SaddleData,
    side: str = "unstable",
    order: int = 12,
    arc_length: float = 4.0,
    window: float = 4.0,
) -> ManifoldCurve:
    """Double-precision manifold of a saddle of any planar map."""
    if side not in ("unstable", "stable"):
        raise DomainError(f"Unknown manifold side: {side}")
    unstable = side == "unstable"
    curve = ManifoldCurve(
        side=side,
        saddle=saddle,
        step=planar_map.on_series if unstable else planar_map.inverse,
        lam=saddle.lam,
        location=saddle.location,
    )
    vector = saddle.unstable if unstable else saddle.stable
    curve.coefficients = solve_jet(
        curve.step, saddle.location, vector, saddle.lam, order, curve.prec
    )
    choose_xi0(curve)
    sample_curve(curve, arc_length, window)
    return curve


def _rescaled_curve(
    params: RescaledParams, order: int, prec: WorkingPrecision, side: str
) -> ManifoldCurve:
    if order < 1:
        raise DomainError("Jet order must be at least 1")
    planar = RescaledMap.from_params(params, prec)
    with prec.context():
        delta, lam = planar.delta, planar.lam
        ev = (delta, lam - 1 - 2 * delta * delta)
        norm = prec.sqrt(ev[0] ** 2 + ev[1] ** 2)
        eigenvector = (ev[0] / norm, ev[1] / norm)
        curve = ManifoldCurve(
            side=side,
            saddle=rescaled_saddle(params),
            step=planar,
            lam=lam,
            location=(prec.num(0), prec.num(0)),
            prec=prec,
        )
        curve.coefficients = solve_jet(planar, (0, 0), eigenvector, lam, order, prec)
        if side == "stable":
            curve.reflection = planar.involution
            curve.reflection_matrix = ((1, -delta), (0, -1))
    return curve


def unstable_manifold(
    params: RescaledParams,
    order: int = 18,
    arc_length: float = 12.0,
    window: float = 4.0,
    prec: Optional[WorkingPrecision] = None,
    sample: bool = True,
) -> ManifoldCurve:
    """Unstable manifold of the saddle of the rescaled family at the origin."""
    prec = prec or WorkingPrecision()
    curve = _rescaled_curve(params, order, prec, "unstable")
    with prec.context():
        choose_xi0(curve)
        if sample:
            sample_curve(curve, arc_length, window)
    return curve


def stable_manifold(
    params: RescaledParams,
    order: int = 18,
    arc_length: float = 12.0,
    window: float = 4.0,
    prec: Optional[WorkingPrecision] = None,
    sample: bool = True,
) -> ManifoldCurve:
    """Stable manifold, the reversor image of the unstable one.

    ``F^-1(P^s(xi)) = P^s(lam xi)`` holds with ``P^s = R o P^u``.
    """
    prec = prec or WorkingPrecision()
    curve = _rescaled_curve(params, order, prec, "stable")
    with prec.context():
        choose_xi0(curve)
        if sample:
            sample_curve(curve, arc_length, window)
    return curve


@dataclass
class Intersection:
    """A transversal crossing of two curves."""

    point: tuple[float, float]
    angle: float
    sign: int
    xi_u: float
    xi_s: float

    def to_dict(self) -> dict:
        """Serialize the intersection."""
        return {
            "point": list(self.point),
            "angle": self.angle,
            "sign": self.sign,
            "xiU": self.xi_u,
            "xiS": self.xi_s,
        }


def _segment_crossings(
    a: np.ndarray, b: np.ndarray
) -> list[tuple[int, int, float, float]]:
    p, r = a[:-1], np.diff(a, axis=0)
    q, s = b[:-1], np.diff(b, axis=0)
    denom = r[:, None, 0] * s[None, :, 1] - r[:, None, 1] * s[None, :, 0]
    qp = q[None, :, :] - p[:, None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (qp[..., 0] * s[None, :, 1] - qp[..., 1] * s[None, :, 0]) / denom
        w = (qp[..., 0] * r[:, None, 1] - qp[..., 1] * r[:, None, 0]) / denom
    hits = np.nonzero((denom != 0) & (t >= 0) & (t < 1) & (w >= 0) & (w < 1))
    return [(int(i), int(j), float(t[i, j]), float(w[i, j])) for i, j in zip(*hits)]


def _as_float(point) -> np.ndarray:
    return np.array([float(point[0]), float(point[1])])


def homoclinic_intersections(wu: Curve, ws: Curve) -> list[Intersection]:
    """Transversal intersections of two sampled curves, sorted along ``wu``.

    Polyline crossings are refined by solving ``wu(xi) = ws(eta)`` in the
    logarithms of the parameters.
    """
    crossings = _segment_crossings(np.asarray(wu.samples), np.asarray(ws.samples))
    if not crossings:
        logger.info("No intersections found in the window")
        return []

    def position(curve: Curve, xi: float):
        if isinstance(curve, ManifoldCurve):
            with curve.prec.context():
                return curve.prec.num(xi)
        return xi

    result: list[Intersection] = []
    for i, j, t, w in crossings:
        xu = wu.parameters[i] + t * (wu.parameters[i + 1] - wu.parameters[i])
        xs = ws.parameters[j] + w * (ws.parameters[j + 1] - ws.parameters[j])
        log_scale = isinstance(wu, ManifoldCurve) and isinstance(ws, ManifoldCurve)

        def equations(z):
            a = math.exp(z[0]) if log_scale else z[0]
            b = math.exp(z[1]) if log_scale else z[1]
            unstable = _as_float(wu.point(position(wu, a)))
            return unstable - _as_float(ws.point(position(ws, b)))

        z0 = np.log([xu, xs]) if log_scale else np.array([xu, xs])
        z, _, status, message = fsolve(equations, z0, full_output=True, xtol=1e-14)
        if status != 1:
            logger.debug("Intersection refinement stopped: %s", message)
        xu, xs = (np.exp(z) if log_scale else z).tolist()
        if any(abs(xu - r.xi_u) <= 1e-9 * max(1.0, abs(xu)) for r in result):
            continue
        tu = _as_float(wu.tangent(position(wu, xu)))
        ts = _as_float(ws.tangent(position(ws, xs)))
        angle = acute_angle(tu, ts)
        if angle == 0.0:
            continue
        point = _as_float(wu.point(position(wu, xu)))
        result.append(
            Intersection(
                (float(point[0]), float(point[1])),
                angle,
                1 if cross2(tu, ts) > 0 else -1,
                float(xu),
                float(xs),
            )
        )
    result.sort(key=lambda r: r.xi_u)
    return result


def precision_for(h: float, bits: Optional[int] = None) -> WorkingPrecision:
    """Working precision required for the splitting at ``h``.

    :raises PrecisionRefusal: below the supported range of ``h``.
    """
    bits = bits or DOUBLE_BITS
    if h < REFUSAL_H:
        raise PrecisionRefusal(
            f"h = {h} is below {REFUSAL_H}; the splitting cannot be resolved"
        )
    if h < DOUBLE_H and bits < EXTENDED_BITS:
        logger.warning(
            "h = %g needs extended precision; using %d bits", h, EXTENDED_BITS
        )
        bits = EXTENDED_BITS
    return WorkingPrecision(bits)


@dataclass
class SplittingReport:
    """Splitting of the separatrices at one value of ``h``."""

    h: float
    precision_bits: int
    points: list[tuple[float, float]] = field(default_factory=list)
    parameters: list[float] = field(default_factory=list)
    angles: list[float] = field(default_factory=list)
    signs: list[int] = field(default_factory=list)
    lobe_areas: list[float] = field(default_factory=list)
    action_area: float = 0.0
    accuracy: float = math.inf
    jet_defect: float = math.inf

    @property
    def angle(self) -> float:
        """Largest angle at a primary homoclinic point."""
        return max(self.angles)

    @property
    def lobe_area(self) -> float:
        """Mean of the two adjacent lobe areas."""
        return sum(self.lobe_areas) / len(self.lobe_areas)

    def row(self) -> list:
        """CSV row in :data:`CSV_COLUMNS` order."""
        return [self.h, self.angle, self.lobe_area, self.accuracy, self.precision_bits]

    def to_dict(self) -> dict:
        """Serialize the report."""
        return {
            "h": self.h,
            "precisionBits": self.precision_bits,
            "points": [list(p) for p in self.points],
            "parameters": self.parameters,
            "angles": self.angles,
            "signs": self.signs,
            "lobeAreas": self.lobe_areas,
            "actionArea": self.action_area,
            "accuracy": self.accuracy,
            "jetDefect": self.jet_defect,
        }


def _green(curve: ManifoldCurve, xi_a, xi_b):
    """Signed ``1/2 int (u dv - v du)`` along ``curve`` from ``xi_a`` to ``xi_b``.

    The integral runs in ``log xi`` and is split where the pull-back count
    changes.
    """
    prec = curve.prec
    lo, hi = (xi_a, xi_b) if xi_a <= xi_b else (xi_b, xi_a)
    cuts = [lo]
    edge = curve.xi0
    while edge < hi:
        if edge > lo:
            cuts.append(edge)
        edge = edge * curve.lam
    cuts.append(hi)

    def integrand(s):
        xi = prec.exp(s)
        u, v = curve.point(xi)
        du, dv = curve.tangent(xi)
        return (u * dv - v * du) * xi / 2

    total = prec.fsum(
        prec.integrate(integrand, prec.log(a), prec.log(b))
        for a, b in zip(cuts, cuts[1:])
    )
    return total if xi_a <= xi_b else -total


def _generating(q0, q1, delta):
    return (q1 - q0) ** 2 / (2 * delta) + delta * (q0 * q0 - q0**3 / 3)


def _action(wu: ManifoldCurve, ws: ManifoldCurve, xi_u, xi_s, tail) -> Any:
    """Action of the homoclinic orbit through ``wu(xi_u) = ws(xi_s)``."""
    prec, lam = wu.prec, wu.lam
    past = []
    xi = xi_u
    while xi > tail:
        past.append(wu.point(xi)[0])
        xi = xi / lam
    future = []
    xi = xi_s / lam
    while xi > tail:
        future.append(ws.point(xi)[0])
        xi = xi / lam
    orbit = list(reversed(past)) + future
    delta = wu.step.delta
    return prec.fsum(_generating(a, b, delta) for a, b in zip(orbit, orbit[1:]))


def symmetric_parameters(wu: ManifoldCurve) -> tuple[Any, Any]:
    """Parameters of the primary homoclinic points on ``Fix(R)`` and ``Fix(F R)``."""
    prec, delta = wu.prec, wu.step.delta
    params = wu.parameters
    v = wu.samples[:, 1]
    changes = np.nonzero((v[:-1] > 0) & (v[1:] <= 0))[0]
    if len(changes) == 0:
        raise GeometryError("Unstable manifold never returns to the symmetry line")
    i = int(changes[0])

    def on_symmetry(xi):
        return wu.point(xi)[1]

    xi1 = prec.find_root(on_symmetry, prec.num(params[i]), prec.num(params[i + 1]))

    def on_second_symmetry(xi):
        u, v = wu.point(xi)
        w = u - delta * v
        return 2 * v - delta * (2 * w - w * w)

    xi2 = prec.find_root(
        on_second_symmetry, xi1 * (1 + prec.epsilon * 64), xi1 * wu.lam
    )
    return xi1, xi2


def measure_splitting(
    params: RescaledParams,
    bits: Optional[int] = None,
    order: int = 18,
    arc_length: float = 12.0,
    window: float = 4.0,
    tolerance: float = LOBE_TOLERANCE,
) -> SplittingReport:
    """Angle and lobe area at the primary homoclinic points of the rescaled family.

    :param tolerance: Largest relative disagreement between the two lobe
        areas and the action difference; 2% by default.
    :raises PrecisionRefusal: if ``h`` is too small for any supported precision.
    :raises InsufficientPrecision: if the areas disagree by more than ``tolerance``.
    """
    prec = precision_for(params.h, bits)
    logger.info("Measuring splitting at h = %g with %d bits", params.h, prec.bits)
    wu = unstable_manifold(params, order, arc_length, window, prec)
    ws = stable_manifold(params, order, arc_length, window, prec, sample=False)

    with prec.context():
        xi1, xi2 = symmetric_parameters(wu)
        lam = wu.lam
        p1, p2 = wu.point(xi1), wu.point(xi2)

        lobe_a = _green(wu, xi1, xi2) + _green(ws, xi2 / lam, xi1)
        lobe_b = _green(wu, xi2, xi1 * lam) + _green(ws, xi1 / lam, xi2 / lam)
        tail = prec.sqrt(prec.epsilon * 1e-3) * wu.xi0
        action = _action(wu, ws, xi1, xi1, tail) - _action(wu, ws, xi2, xi2 / lam, tail)

        angles, signs = [], []
        for xi_u, xi_s in ((xi1, xi1), (xi2, xi2 / lam)):
            tu = _as_float(wu.tangent(xi_u))
            ts = _as_float(ws.tangent(xi_s))
            angles.append(acute_angle(tu, ts))
            signs.append(1 if cross2(tu, ts) > 0 else -1)

        area_a, area_b = abs(lobe_a), abs(lobe_b)
        accuracy = float(max(abs(area_a - area_b), abs(area_a - abs(action))))

    report = SplittingReport(
        h=params.h,
        precision_bits=prec.bits,
        points=[tuple(float(c) for c in p1), tuple(float(c) for c in p2)],
        parameters=[float(xi1), float(xi2)],
        angles=angles,
        signs=signs,
        lobe_areas=[float(area_a), float(area_b)],
        action_area=float(abs(action)),
        accuracy=accuracy,
        jet_defect=wu.defect,
    )
    logger.debug("Lobe areas %s, action %g", report.lobe_areas, report.action_area)
    if not report.lobe_area > 0 or accuracy > tolerance * report.lobe_area:
        required = max(EXTENDED_BITS, 2 * prec.bits)
        raise InsufficientPrecision(
            f"Lobe area {report.lobe_area:.3g} at h = {params.h} is not resolved "
            f"(accuracy {accuracy:.3g}); use at least {required} bits",
            required_bits=required,
        )
    return report


def _measure_worker(task: tuple) -> SplittingReport:
    h, bits, order, arc_length, window, tolerance = task
    return measure_splitting(
        RescaledParams.from_h(h), bits, order, arc_length, window, tolerance
    )


def splitting_sweep(
    hs: Sequence[float],
    bits: Optional[int] = None,
    order: int = 18,
    arc_length: float = 12.0,
    window: float = 4.0,
    jobs: int = 1,
    tolerance: float = LOBE_TOLERANCE,
) -> list[SplittingReport]:
    """Measure the splitting at several ``h`` in parallel."""
    tasks = [(float(h), bits, order, arc_length, window, tolerance) for h in hs]
    return parallel_map(_measure_worker, tasks, jobs)


@dataclass
class SlopeFit:
    """Fit of ``log(area h**5)`` against ``1/h``."""

    slope: float
    intercept: float
    stderr: float
    confidence: tuple[float, float]
    expected: float = -2.0 * math.pi**2

    @property
    def relative_error(self) -> float:
        """Deviation of the slope from ``-2 pi**2``."""
        return abs(self.slope - self.expected) / abs(self.expected)

    def to_dict(self) -> dict:
        """Serialize the fit."""
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "stderr": self.stderr,
            "confidence": list(self.confidence),
            "expected": self.expected,
        }


def fit_splitting_slope(
    reports: Sequence[SplittingReport], level: float = 0.95
) -> SlopeFit:
    """Least-squares slope with a Student-t confidence interval."""
    if len(reports) < 3:
        raise DomainError("At least three values of h are needed for a slope fit")
    x = np.array([1.0 / r.h for r in reports])
    y = np.array([math.log(r.lobe_area * r.h**5) for r in reports])
    fit = linregress(x, y)
    half = float(student_t.ppf(0.5 + level / 2.0, len(x) - 2)) * float(fit.stderr)
    return SlopeFit(
        float(fit.slope),
        float(fit.intercept),
        float(fit.stderr),
        (float(fit.slope) - half, float(fit.slope) + half),
    )


def theta_model(t, h: float, theta1: float = 1.0):
    """Splitting function ``h mu(h) / (2 pi) sin(2 pi t / h)``."""
    amplitude = h * float(mu(h, theta1).value) / (2.0 * math.pi)
    return amplitude * np.sin(2.0 * math.pi * np.asarray(t) / h)


def predicted_lobe_area(h: float, theta1: float = 1.0) -> float:
    """Area under half a period of :func:`theta_model`, ``h**2 mu(h) / (2 pi**2)``."""
    return h * h * float(mu(h, theta1).value) / (2.0 * math.pi**2)
