# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Finite-depth scans of a parameter interval for homoclinic tangencies.

A tangency is declared where the number of transversal intersections of
two invariant curves drops by two between neighbouring parameters and the
smallest intersection angle, after bisection, is below a threshold. Each
tangency opens a child interval around it that is scanned again, one
level deeper.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.spatial.distance import cdist
from scipy.stats import linregress

from ..errors import DomainError, ScanBudgetExhausted, StageError
from ..maps import StandardMapLift, saddle_data
from ..separatrix import (
    Curve,
    FunctionCurve,
    ManifoldCurve,
    homoclinic_intersections,
    manifold_of,
)
from ..utils import Echo, progress

logger = logging.getLogger(__name__)

MAX_DEPTH = 6

UNDECIDED_SHARE = 0.5

CSV_COLUMNS = ["depth", "lo", "hi", "k_star", "min_angle"]


def saddle_manifolds(
    k: float,
    saddle: tuple[float, float] = (0.0, 0.0),
    arc_length: float = 3.0,
    order: int = 12,
    window: float = 1.5,
) -> tuple[ManifoldCurve, ManifoldCurve]:
    """Unstable and stable curves of a saddle of ``f_k`` in the universal cover."""
    planar = StandardMapLift(k)
    data = saddle_data(planar, saddle)
    unstable = manifold_of(planar, data, "unstable", order, arc_length, window)
    stable = manifold_of(planar, data, "stable", order, arc_length, window)
    logger.debug(
        "Saddle %s of f_%g: jet defects %.2e / %.2e",
        saddle,
        k,
        unstable.defect,
        stable.defect,
    )
    return unstable, stable


class TangencyFamily(Protocol):
    """A one-parameter family of pairs of invariant curves."""

    def manifolds(self, k: float) -> tuple[Curve, Curve]:
        """Unstable and stable curves at parameter ``k``."""


@dataclass
class ModelTangencyFamily:
    """The parabola ``y = c x**2 + (k - k*)`` against the x-axis.

    Two transversal intersections for ``k < k*`` merge into a quadratic
    tangency at ``k*``.
    """

    k_star: float
    curvature: float = 0.1
    half_width: float = 1.0
    samples: int = 401

    def _grid(self) -> np.ndarray:
        count = self.samples if self.samples % 2 else self.samples + 1
        return np.linspace(-self.half_width, self.half_width, count)

    def manifolds(self, k: float) -> tuple[Curve, Curve]:
        """The parabola and the x-axis at parameter ``k``."""
        c, offset = self.curvature, k - self.k_star
        unstable = FunctionCurve.sampled(
            lambda t: (t, c * t * t + offset),
            lambda t: (1.0, 2.0 * c * t),
            self._grid(),
        )
        stable = FunctionCurve.sampled(
            lambda t: (t, 0.0), lambda t: (1.0, 0.0), self._grid()
        )
        return unstable, stable


def _arc_spline(samples: np.ndarray) -> CubicSpline:
    chords = np.hypot(*np.diff(samples, axis=0).T)
    keep = np.concatenate([[True], chords > 0])
    arc = np.concatenate([[0.0], np.cumsum(chords[chords > 0])])
    return CubicSpline(arc, samples[keep], axis=0)


@dataclass
class ShearedStandardFamily:
    """Stable curve of the saddle of ``f_k`` and its sheared copy.

    The unstable curve is the stable one displaced along its normal by
    ``c (t - t_m)**2 - (k* - k)`` over an arc of half length ``half_width``
    around its midpoint ``t_m``, so the pair has a quadratic tangency at
    ``k*`` while the curves themselves move with ``k``.
    """

    k_star: float
    curvature: float = 0.1
    half_width: float = 1.0
    samples: int = 401
    order: int = 12
    arc_length: float = 4.0
    window: float = 3.0

    def _stable_spline(self, k: float) -> CubicSpline:
        planar = StandardMapLift(k)
        saddle = saddle_data(planar, (0.0, 0.0))
        curve = manifold_of(
            planar, saddle, "stable", self.order, self.arc_length, self.window
        )
        return _arc_spline(np.asarray(curve.samples, dtype=float))

    def manifolds(self, k: float) -> tuple[Curve, Curve]:
        """The sheared copy and the stable curve over the middle arc."""
        spline = self._stable_spline(k)
        middle = float(spline.x[-1]) / 2.0
        half = min(self.half_width, middle)
        count = self.samples if self.samples % 2 else self.samples + 1
        grid = middle + np.linspace(-half, half, count)
        c, lift = self.curvature, self.k_star - k

        def base(t: float) -> np.ndarray:
            return np.asarray(spline(t), dtype=float)

        def base_tangent(t: float) -> np.ndarray:
            return np.asarray(spline(t, 1), dtype=float)

        def sheared(t: float) -> np.ndarray:
            tangent = base_tangent(t)
            normal = np.array([-tangent[1], tangent[0]]) / np.hypot(*tangent)
            return base(t) + normal * (c * (t - middle) ** 2 - lift)

        def sheared_tangent(t: float, step: float = 1e-7) -> np.ndarray:
            return (sheared(t + step) - sheared(t - step)) / (2.0 * step)

        unstable = FunctionCurve.sampled(sheared, sheared_tangent, grid)
        stable = FunctionCurve.sampled(base, base_tangent, grid)
        return unstable, stable


@dataclass
class StandardFamily:
    """Unstable curve of the saddle at the origin and stable curve of its translate."""

    shift: tuple[float, float] = (1.0, 0.0)
    order: int = 12
    arc_length: float = 3.0
    window: float = 1.5

    def manifolds(self, k: float) -> tuple[Curve, Curve]:
        """Unstable curve at the origin, stable curve moved by ``shift``."""
        unstable, stable = saddle_manifolds(
            k, (0.0, 0.0), self.arc_length, self.order, self.window
        )
        dx, dy = self.shift

        def point(xi):
            with stable.prec.context():
                x, y = stable.point(stable.prec.num(xi))
            return float(x) + dx, float(y) + dy

        def tangent(xi):
            with stable.prec.context():
                return tuple(float(c) for c in stable.tangent(stable.prec.num(xi)))

        moved = FunctionCurve(
            np.asarray(stable.parameters),
            np.asarray(stable.samples, dtype=float) + np.array(self.shift),
            stable.truncated,
            point,
            tangent,
        )
        return unstable, moved


@dataclass
class Sample:
    """Intersection count and smallest angle at one parameter."""

    k: float
    count: int
    min_angle: float
    decided: bool = True


@dataclass
class ScanNode:
    """One scanned interval with its tangencies and child intervals."""

    depth: int
    lo: float
    hi: float
    tangencies: list[float] = field(default_factory=list)
    angles: list[float] = field(default_factory=list)
    min_angle: float = math.inf
    undecided: bool = False
    children: list[ScanNode] = field(default_factory=list)

    def walk(self):
        """This node and all its descendants, depth first."""
        yield self
        for child in self.children:
            yield from child.walk()

    def rows(self) -> list[list]:
        """CSV rows ``depth, lo, hi, k_star, min_angle``; one per tangency."""
        if not self.tangencies:
            return [[self.depth, self.lo, self.hi, None, self.min_angle]]
        return [
            [self.depth, self.lo, self.hi, k, a]
            for k, a in zip(self.tangencies, self.angles)
        ]

    def refined(self) -> list[float]:
        """Tangencies of the subtree, each from the deepest level that found it.

        A tangency whose child interval stayed undecided or found nothing
        is kept at this level.
        """
        found = []
        for k in self.tangencies:
            deeper = [
                t
                for child in self.children
                if child.lo <= k <= child.hi
                for t in child.refined()
            ]
            found.extend(deeper or [k])
        return found

    def to_dict(self) -> dict:
        """Serialize the subtree."""
        return {
            "depth": self.depth,
            "lo": self.lo,
            "hi": self.hi,
            "tangencies": self.tangencies,
            "angles": self.angles,
            "minAngle": None if math.isinf(self.min_angle) else self.min_angle,
            "undecided": self.undecided,
            "children": [c.to_dict() for c in self.children],
        }


@dataclass
class ScanTree:
    """Nested intervals of a finite-depth tangency scan."""

    root: ScanNode
    budget: int
    evaluations: int = 0

    def nodes(self) -> list[ScanNode]:
        """All nodes, depth first."""
        return list(self.root.walk())

    @property
    def tangencies(self) -> list[float]:
        """Tangency parameters found at the deepest level reached around each."""
        return sorted(self.root.refined())

    @property
    def undecided(self) -> list[ScanNode]:
        """Intervals the scan could not decide."""
        return [node for node in self.nodes() if node.undecided]

    @property
    def undecided_share(self) -> float:
        """Fraction of scanned intervals left undecided."""
        nodes = self.nodes()
        return len(self.undecided) / len(nodes)

    @property
    def coverage(self) -> float:
        """Share of the root interval covered by its child intervals."""
        width = self.root.hi - self.root.lo
        if not width > 0:
            return 0.0
        return sum(c.hi - c.lo for c in self.root.children) / width

    def nested(self) -> bool:
        """Children inside their parents and siblings disjoint, at every node."""
        for node in self.nodes():
            ordered = sorted(node.children, key=lambda c: c.lo)
            for child in ordered:
                if not (node.lo <= child.lo < child.hi <= node.hi):
                    return False
            for left, right in zip(ordered, ordered[1:]):
                if left.hi > right.lo:
                    return False
        return True

    def rows(self) -> list[list]:
        """CSV rows of all nodes."""
        return [row for node in self.nodes() for row in node.rows()]

    def to_dict(self) -> dict:
        """Serialize the tree."""
        return {
            "budget": self.budget,
            "evaluations": self.evaluations,
            "coverage": self.coverage,
            "undecidedShare": self.undecided_share,
            "tangencies": self.tangencies,
            "root": self.root.to_dict(),
        }


class _Evaluator:
    """Counts family evaluations against the budget."""

    def __init__(self, family: TangencyFamily, budget: int, echo: Echo = None):
        self.family = family
        self.budget = budget
        self.echo = echo
        self.used = 0

    @property
    def exhausted(self) -> bool:
        """Whether the budget is spent."""
        return self.used >= self.budget

    def __call__(self, k: float) -> Sample:
        self.used += 1
        try:
            unstable, stable = self.family.manifolds(k)
            found = homoclinic_intersections(unstable, stable)
        except StageError as error:
            logger.warning("Manifolds at k = %g are not reliable: %s", k, error)
            return Sample(k, 0, math.inf, decided=False)
        angles = [r.angle for r in found]
        return Sample(k, len(found), min(angles) if angles else math.inf)


def _bisect(
    evaluate: _Evaluator, a: Sample, b: Sample, tol: float
) -> tuple[Sample, Sample]:
    """Shrink ``[a, b]`` around the change of intersection count to width ``tol``."""
    while abs(b.k - a.k) > tol and not evaluate.exhausted:
        middle = evaluate((a.k + b.k) / 2.0)
        if not middle.decided:
            break
        if middle.count == a.count:
            a = middle
        else:
            b = middle
    return a, b


def _scan(
    evaluate: _Evaluator,
    node: ScanNode,
    depth: int,
    steps: int,
    angle: float,
    tol: float,
) -> None:
    samples = []
    for k in np.linspace(node.lo, node.hi, steps + 1):
        if evaluate.exhausted:
            node.undecided = True
            return
        sample = evaluate(float(k))
        if not sample.decided:
            node.undecided = True
        samples.append(sample)
    node.min_angle = min(s.min_angle for s in samples)

    for a, b in zip(samples, samples[1:]):
        if not (a.decided and b.decided) or abs(a.count - b.count) != 2:
            continue
        a, b = _bisect(evaluate, a, b, tol)
        more = a if a.count > b.count else b
        if abs(b.k - a.k) > tol:
            node.undecided = True
            continue
        if more.min_angle < angle:
            node.tangencies.append((a.k + b.k) / 2.0)
            node.angles.append(more.min_angle)
            node.min_angle = min(node.min_angle, more.min_angle)
        else:
            logger.debug("Count change near k = %g without a small angle", a.k)

    progress(
        evaluate.echo,
        f"depth {node.depth} [{node.lo:.6g}, {node.hi:.6g}]: "
        f"{len(node.tangencies)} tangencies, {evaluate.used} evaluations",
    )

    if depth <= node.depth:
        return
    step = (node.hi - node.lo) / steps
    centers = sorted(node.tangencies)
    for i, center in enumerate(centers):
        half = step / 2.0
        if i > 0:
            half = min(half, (center - centers[i - 1]) / 2.0)
        if i + 1 < len(centers):
            half = min(half, (centers[i + 1] - center) / 2.0)
        half = min(half, center - node.lo, node.hi - center)
        if half <= tol:
            continue
        child = ScanNode(node.depth + 1, center - half, center + half)
        node.children.append(child)
        _scan(evaluate, child, depth, steps, angle, tol)


def tangency_scan(
    family: TangencyFamily,
    interval: tuple[float, float],
    depth: int = 3,
    steps: int = 16,
    budget: int = 400,
    angle: float = 1e-3,
    tol: float = 1e-6,
    strict: bool = False,
    echo: Echo = None,
) -> ScanTree:
    """Scan ``interval`` for tangencies down to ``depth`` nested levels.

    :param budget: Largest number of curve evaluations.
    :param strict: Raise :class:`ScanBudgetExhausted` when more than half of the
        intervals stay undecided.
    """
    lo, hi = interval
    if not lo < hi:
        raise DomainError(f"Empty scan interval [{lo}, {hi}]")
    if not 1 <= depth <= MAX_DEPTH:
        raise DomainError(f"Scan depth must lie in [1, {MAX_DEPTH}], got {depth}")
    if steps < 2 or budget < steps + 1:
        raise DomainError("The budget must cover at least one sweep of the interval")
    evaluate = _Evaluator(family, budget, echo)
    tree = ScanTree(ScanNode(1, float(lo), float(hi)), budget)
    _scan(evaluate, tree.root, depth, steps, angle, tol)
    tree.evaluations = evaluate.used
    logger.info(
        "Scan of [%g, %g]: %d tangencies, %d evaluations, %d undecided intervals",
        lo,
        hi,
        len(tree.tangencies),
        tree.evaluations,
        len(tree.undecided),
    )
    if strict and tree.undecided_share > UNDECIDED_SHARE:
        error = ScanBudgetExhausted(
            f"{len(tree.undecided)} intervals stayed undecided after "
            f"{tree.evaluations} evaluations"
        )
        error.tree = tree
        raise error
    return tree


@dataclass
class UnfoldingFit:
    """Power law ``distance = c |k - k*|**beta`` near a tangency."""

    beta: float
    c: float
    stderr: float
    offsets: list[float]
    distances: list[float]

    def to_dict(self) -> dict:
        """Serialize the fit."""
        return {
            "beta": self.beta,
            "c": self.c,
            "stderr": self.stderr,
            "offsets": self.offsets,
            "distances": self.distances,
        }


def curve_distance(first: Curve, second: Curve) -> float:
    """Smallest distance between the sampled points of two curves."""
    return float(np.min(cdist(np.asarray(first.samples), np.asarray(second.samples))))


def unfolding_exponent(
    family: TangencyFamily, k_star: float, offsets=(1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2)
) -> UnfoldingFit:
    """Fit the separation of the curves on the side of ``k*`` where they do not meet."""
    sides = []
    for sign in (1.0, -1.0):
        pairs = [family.manifolds(k_star + sign * d) for d in offsets]
        if all(not homoclinic_intersections(u, s) for u, s in pairs):
            sides.append([curve_distance(u, s) for u, s in pairs])
    if not sides:
        raise DomainError(f"The curves intersect on both sides of k = {k_star}")
    distances = sides[0]
    fit = linregress(np.log(offsets), np.log(distances))
    return UnfoldingFit(
        float(fit.slope),
        float(math.exp(fit.intercept)),
        float(fit.stderr),
        list(offsets),
        distances,
    )
