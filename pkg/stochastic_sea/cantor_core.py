# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Dynamically defined Cantor sets and their Hausdorff dimension bounds.

A :class:`CantorSystem` is given by the two contracting inverse branches of
an expanding map on the convex hull of the set. Refining the hull through
the branches gives a :class:`CylinderTree`; its gaps yield the left and
right thickness, from which two lower bounds on the Hausdorff dimension
follow: the root of ``tau_L**d + tau_R**d = (1 + tau_L + tau_R)**d`` and a
closed-form logarithmic estimate.

.. code-block:: python

    from stochastic_sea.cantor_core import (
        CantorSystem, dimension_lower_bound_exact, lateral_thickness, refine,
    )

    tree = refine(CantorSystem.middle_fifths(), depth=6)
    report = lateral_thickness(tree)
    bound = dimension_lower_bound_exact(report.tau_L, report.tau_R)
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial
from scipy.optimize import bisect
from scipy.stats import linregress

from .errors import DegenerateGapError, DomainError, SystemValidationError
from .utils import chebyshev_lobatto

logger = logging.getLogger(__name__)

METHODS = ("exact-bisection", "log-formula", "moran-oracle", "box-oracle")

DEGENERATE_SCALE = 1e3
"""Gaps shorter than this many ulps of the hull are rejected."""

TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with ``lo < hi``."""

    lo: float
    hi: float

    def __post_init__(self):
        """Check the ordering of the endpoints."""
        if not self.lo < self.hi:
            raise DomainError(f"Interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        """Length of the interval."""
        return self.hi - self.lo

    def contains(self, other: Interval, slack: float = 0.0) -> bool:
        """Whether ``other`` lies inside this interval."""
        return self.lo - slack <= other.lo and other.hi <= self.hi + slack

    def overlaps(self, other: Interval) -> bool:
        """Whether the two closed intervals meet."""
        return max(self.lo, other.lo) <= min(self.hi, other.hi)

    def to_list(self) -> list[float]:
        """Serialize as ``[lo, hi]``."""
        return [float(self.lo), float(self.hi)]

    @classmethod
    def from_list(cls, values: Sequence[float]) -> Interval:
        """Create an interval from ``[lo, hi]``."""
        lo, hi = values
        return cls(float(lo), float(hi))


@dataclass(frozen=True)
class AffineBranch:
    """Affine contraction of the hull onto ``[offset, offset + ratio*|hull|]``.

    Orientation ``-1`` reverses the order of the image.
    """

    ratio: float
    offset: float
    orientation: int = 1

    kind = "affine"
    is_affine = True

    def apply(self, x, hull: Interval):
        """Evaluate the branch."""
        t = (np.asarray(x, dtype=float) - hull.lo) / hull.length
        if self.orientation < 0:
            t = 1.0 - t
        return self.offset + self.ratio * hull.length * t

    def derivative(self, x, hull: Interval):
        """Evaluate the derivative."""
        return np.full_like(np.asarray(x, dtype=float), self.orientation * self.ratio)

    def to_dict(self) -> dict:
        """Serialize the branch."""
        return {
            "kind": self.kind,
            "ratio": self.ratio,
            "offset": self.offset,
            "orientation": self.orientation,
        }


@dataclass(frozen=True)
class PolynomialBranch:
    """Monotone polynomial contraction in power or Chebyshev basis."""

    coefficients: tuple[float, ...]
    basis: str = "power"
    domain: Optional[tuple[float, float]] = None

    kind = "polynomial"
    is_affine = False

    @property
    def polynomial(self) -> Union[Polynomial, Chebyshev]:
        """The numpy polynomial object."""
        if self.basis == "chebyshev":
            domain = self.domain if self.domain is not None else (-1.0, 1.0)
            return Chebyshev(self.coefficients, domain=domain)
        if self.basis == "power":
            return Polynomial(self.coefficients)
        raise SystemValidationError(f"Unknown polynomial basis: {self.basis}")

    def apply(self, x, hull: Interval):
        """Evaluate the branch."""
        return self.polynomial(np.asarray(x, dtype=float))

    def derivative(self, x, hull: Interval):
        """Evaluate the derivative."""
        return self.polynomial.deriv()(np.asarray(x, dtype=float))

    def to_dict(self) -> dict:
        """Serialize the branch."""
        data = {
            "kind": self.kind,
            "coefficients": [float(c) for c in self.coefficients],
            "basis": self.basis,
        }
        if self.domain is not None:
            data["domain"] = [float(d) for d in self.domain]
        return data


Branch = Union[AffineBranch, PolynomialBranch]


def branch_from_dict(data: dict) -> Branch:
    """Create a branch from its JSON form."""
    try:
        kind = data["kind"]
        if kind == "affine":
            orientation = int(data.get("orientation", 1))
            if orientation not in (1, -1):
                raise SystemValidationError("orientation must be +1 or -1")
            ratio, offset = float(data["ratio"]), float(data["offset"])
            return AffineBranch(ratio, offset, orientation)
        if kind == "polynomial":
            domain = data.get("domain")
            return PolynomialBranch(
                tuple(float(c) for c in data["coefficients"]),
                basis=data.get("basis", "power"),
                domain=tuple(float(d) for d in domain) if domain else None,
            )
    except (KeyError, TypeError, ValueError) as e:
        raise SystemValidationError(f"Malformed branch {data!r}: {e}") from e
    raise SystemValidationError(f"Unknown branch kind: {data.get('kind')!r}")


@dataclass(frozen=True)
class CantorSystem:
    """Two contracting branches acting on a hull interval."""

    hull: Interval
    branches: tuple[Branch, Branch]

    @classmethod
    def affine(cls, r0: float, r1: float) -> CantorSystem:
        """Branch images ``[0, r0]`` and ``[1 - r1, 1]`` in the unit interval."""
        if not (0 < r0 < 1 and 0 < r1 < 1 and r0 + r1 < 1):
            raise DomainError(
                f"Affine ratios need r0, r1 > 0 and r0 + r1 < 1: {r0}, {r1}"
            )
        branches = (AffineBranch(r0, 0.0), AffineBranch(r1, 1.0 - r1))
        return cls(Interval(0.0, 1.0), branches)

    @classmethod
    def middle_thirds(cls) -> CantorSystem:
        """The middle-thirds Cantor set."""
        return cls.affine(1.0 / 3.0, 1.0 / 3.0)

    @classmethod
    def middle_fifths(cls) -> CantorSystem:
        """Pieces ``[0, 2/5]`` and ``[3/5, 1]``."""
        return cls.affine(0.4, 0.4)

    @classmethod
    def quadratic_perturbed(cls) -> CantorSystem:
        """Left branch ``x/3 + x**2/50``, right branch ``2/3 + x/3``."""
        return cls(
            Interval(0.0, 1.0),
            (
                PolynomialBranch((0.0, 1.0 / 3.0, 1.0 / 50.0)),
                AffineBranch(1.0 / 3.0, 2.0 / 3.0),
            ),
        )

    @classmethod
    def builtin(cls, name: str) -> CantorSystem:
        """Look up a named system."""
        builders = {
            "middle-thirds": cls.middle_thirds,
            "middle-fifths": cls.middle_fifths,
            "quadratic-perturbed": cls.quadratic_perturbed,
        }
        try:
            return builders[name]()
        except KeyError:
            raise SystemValidationError(f"Unknown builtin system: {name}") from None

    @classmethod
    def from_dict(cls, data: dict) -> CantorSystem:
        """Create a system from its JSON form."""
        try:
            hull = Interval.from_list(data["hull"])
            branches = tuple(branch_from_dict(b) for b in data["branches"])
        except (KeyError, TypeError, ValueError) as e:
            raise SystemValidationError(f"Malformed Cantor system: {e}") from e
        if len(branches) != 2:
            raise SystemValidationError("Exactly two branches are supported")
        return cls(hull, branches)

    @classmethod
    def from_json(cls, text: str) -> CantorSystem:
        """Parse a JSON document."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SystemValidationError(f"Invalid JSON: {e}") from e
        if not isinstance(data, dict):
            raise SystemValidationError("A Cantor system must be a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        """Serialize the system."""
        return {
            "hull": self.hull.to_list(),
            "branches": [b.to_dict() for b in self.branches],
        }

    @property
    def is_affine(self) -> bool:
        """Whether both branches are affine."""
        return all(b.is_affine for b in self.branches)

    def apply(self, index: int, x):
        """Evaluate branch ``index``."""
        return self.branches[index].apply(x, self.hull)

    def images(self) -> tuple[Interval, Interval]:
        """Images of the hull under both branches."""
        ends = np.array([self.hull.lo, self.hull.hi])
        result = []
        for index in (0, 1):
            lo, hi = np.sort(self.apply(index, ends))
            if not lo < hi:
                raise SystemValidationError(f"Branch {index} collapses the hull")
            result.append(Interval(float(lo), float(hi)))
        return result[0], result[1]

    def validate(self, samples: int = 257) -> None:
        """Check that the system is dynamically defined.

        :raises SystemValidationError: if the images overlap or escape the
            hull, or a branch is not a monotone contraction.
        """
        first, second = self.images()
        slack = 1e-12 * self.hull.length
        for index, image in enumerate((first, second)):
            if not self.hull.contains(image, slack):
                raise SystemValidationError(f"Image of branch {index} escapes the hull")
        if first.overlaps(second):
            raise SystemValidationError("Branch images overlap")

        x = np.linspace(self.hull.lo, self.hull.hi, samples)
        for index, branch in enumerate(self.branches):
            slope = branch.derivative(x, self.hull)
            if not (np.all(slope > 0) or np.all(slope < 0)):
                raise SystemValidationError(f"Branch {index} is not strictly monotone")
            lipschitz = float(np.max(np.abs(slope)))
            if lipschitz >= 1.0:
                raise SystemValidationError(
                    f"Branch {index} is not a contraction (Lipschitz {lipschitz:.4g})"
                )


@dataclass
class CylinderTree:
    """Cylinder intervals of all words up to ``depth``.

    ``levels[m]`` has shape ``(2**m, 2)``; row ``i`` is the cylinder of the
    word whose binary digits spell ``i`` with the first symbol as the most
    significant bit.
    """

    system: CantorSystem
    levels: list[np.ndarray]

    @property
    def depth(self) -> int:
        """Refinement depth."""
        return len(self.levels) - 1

    def interval(self, word: str) -> Interval:
        """Cylinder of ``word`` such as ``"0110"``."""
        if len(word) > self.depth:
            raise DomainError(f"Word longer than tree depth {self.depth}")
        index = int(word, 2) if word else 0
        lo, hi = self.levels[len(word)][index]
        return Interval(float(lo), float(hi))

    def finest(self) -> np.ndarray:
        """Cylinders of the deepest level."""
        return self.levels[-1]


def refine(system: CantorSystem, depth: int) -> CylinderTree:
    """Materialize the cylinders of ``system`` up to ``depth``.

    :param system: A two-branch system; validated first.
    :param depth: Largest word length.
    :return: The cylinder tree.
    """
    if depth < 0:
        raise DomainError("Depth must be non-negative")
    system.validate()
    levels = [np.array([[system.hull.lo, system.hull.hi]])]
    for _ in range(depth):
        parent = levels[-1]
        children = [np.sort(system.apply(index, parent), axis=1) for index in (0, 1)]
        levels.append(np.concatenate(children))
    return CylinderTree(system, levels)


@dataclass(frozen=True)
class Gap:
    """Bounded complementary interval with its adjacent bridges."""

    interval: Interval
    order: int
    left_bridge: Interval
    right_bridge: Interval
    word: str = ""

    def to_dict(self) -> dict:
        """Serialize the gap."""
        return {
            "interval": self.interval.to_list(),
            "order": self.order,
            "leftBridge": self.left_bridge.to_list(),
            "rightBridge": self.right_bridge.to_list(),
            "word": self.word,
        }


def _word(order: int, index: int) -> str:
    return format(index, f"0{order}b") if order else ""


def _gap_arrays(tree: CylinderTree, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Left and right children of every cylinder of ``order``."""
    children = tree.levels[order + 1]
    first, second = children[0::2], children[1::2]
    swap = (first[:, 0] > second[:, 0])[:, None]
    return np.where(swap, second, first), np.where(swap, first, second)


def enumerate_gaps(tree: CylinderTree) -> list[Gap]:
    """List the gaps of orders ``0 .. depth - 1``."""
    if tree.depth < 1:
        raise DomainError("Gaps need a tree of depth at least 1")
    gaps = []
    for order in range(tree.depth):
        left, right = _gap_arrays(tree, order)
        for index, (lb, rb) in enumerate(zip(left, right)):
            gaps.append(
                Gap(
                    interval=Interval(float(lb[1]), float(rb[0])),
                    order=order,
                    left_bridge=Interval(float(lb[0]), float(lb[1])),
                    right_bridge=Interval(float(rb[0]), float(rb[1])),
                    word=_word(order, index),
                )
            )
    return gaps


@dataclass
class ThicknessReport:
    """Left and right thickness over the gaps of a finite tree."""

    tau_L: float
    tau_R: float
    depth: int
    word_L: str = ""
    word_R: str = ""
    converged: Optional[bool] = None

    def to_dict(self) -> dict:
        """Serialize the report."""
        return {
            "tauL": self.tau_L,
            "tauR": self.tau_R,
            "depth": self.depth,
            "argminWordL": self.word_L,
            "argminWordR": self.word_R,
            "converged": self.converged,
        }


def _argmin_word(candidates: list[tuple[float, str]]) -> tuple[float, str]:
    best = min(value for value, _ in candidates)
    ties = [word for value, word in candidates if value <= best * (1.0 + TIE_TOLERANCE)]
    return best, min(ties)


def lateral_thickness(tree: CylinderTree) -> ThicknessReport:
    """Minimal bridge-to-gap ratios on each side.

    :raises DegenerateGapError: if a gap is too short to resolve.
    """
    if tree.depth < 1:
        raise DomainError("Thickness needs a tree of depth at least 1")
    hull = tree.system.hull
    scale = max(abs(hull.lo), abs(hull.hi), hull.length)
    threshold = DEGENERATE_SCALE * np.finfo(float).eps * scale

    left_candidates, right_candidates = [], []
    for order in range(tree.depth):
        left, right = _gap_arrays(tree, order)
        gap = right[:, 0] - left[:, 1]
        if np.any(gap <= threshold):
            index = int(np.argmin(gap))
            raise DegenerateGapError(
                f"Gap of word '{_word(order, index)}' has length {gap[index]:.3g}"
            )
        tau_left = (left[:, 1] - left[:, 0]) / gap
        tau_right = (right[:, 1] - right[:, 0]) / gap
        i, j = int(np.argmin(tau_left)), int(np.argmin(tau_right))
        left_candidates.append((float(tau_left[i]), _word(order, i)))
        right_candidates.append((float(tau_right[j]), _word(order, j)))
        # Ties inside one level resolve to the lowest index, which is the
        # smallest word of that length.

    tau_L, word_L = _argmin_word(left_candidates)
    tau_R, word_R = _argmin_word(right_candidates)
    return ThicknessReport(tau_L, tau_R, tree.depth, word_L, word_R)


def partition_thickness(system: CantorSystem) -> tuple[float, float]:
    """Thickness of the order-zero gap alone."""
    report = lateral_thickness(refine(system, 1))
    return report.tau_L, report.tau_R


def converged_thickness(
    system: CantorSystem, max_depth: int = 20, rtol: float = 1e-6
) -> ThicknessReport:
    """Double the depth until the thickness changes by less than ``rtol``."""
    previous: Optional[ThicknessReport] = None
    depth = 1
    while True:
        report = lateral_thickness(refine(system, depth))
        if previous is not None:
            change = max(
                abs(report.tau_L - previous.tau_L) / previous.tau_L,
                abs(report.tau_R - previous.tau_R) / previous.tau_R,
            )
            logger.debug("Thickness at depth %d changed by %.3g", depth, change)
            if change < rtol:
                report.converged = True
                return report
        if depth >= max_depth:
            report.converged = False
            logger.warning("Thickness not converged at depth %d", depth)
            return report
        previous = report
        depth = min(2 * depth, max_depth)


@dataclass
class DistortionEstimate:
    """Sampled distortion of the expanding map on cylinders."""

    c: float
    depth: int
    samples: int

    def to_dict(self) -> dict:
        """Serialize the estimate."""
        return {"c": self.c, "depth": self.depth, "samples": self.samples}


def distortion_estimate(
    system: CantorSystem, depth: int, samples: int = 17
) -> DistortionEstimate:
    """Sampled supremum of the log cross-ratio distortion of ``psi**n``.

    The inverse of ``psi**n`` on the cylinder of a word is the composed
    branch of that word, so the distortion on one cylinder is the spread of
    secant slopes of the composed branch, read on a Chebyshev-Lobatto grid
    of the hull.
    """
    if samples < 3:
        raise DomainError("At least three samples per cylinder are required")
    if depth < 1:
        raise DomainError("Depth must be at least 1")
    system.validate()
    if system.is_affine:
        return DistortionEstimate(0.0, depth, samples)

    grid = chebyshev_lobatto(samples, system.hull.lo, system.hull.hi)
    spacing = grid[None, :] - grid[:, None]
    off_diagonal = ~np.eye(samples, dtype=bool)
    values = grid[None, :]
    worst = 0.0
    for _ in range(depth):
        values = np.concatenate([system.apply(index, values) for index in (0, 1)])
        with np.errstate(divide="ignore", invalid="ignore"):
            slopes = np.abs(values[:, None, :] - values[:, :, None]) / np.abs(spacing)
        slopes = np.where(off_diagonal & (slopes > 0), slopes, np.nan)
        spread = np.log(np.nanmax(slopes, axis=2)) - np.log(np.nanmin(slopes, axis=2))
        worst = max(worst, float(np.nanmax(spread)))
    return DistortionEstimate(worst, depth, samples)


def thickness_interval(tau_partition: float, c: float) -> tuple[float, float]:
    """Enclosure ``(exp(-c) * tau, exp(c) * tau)`` of the Cantor set thickness."""
    if tau_partition <= 0:
        raise DomainError("Partition thickness must be positive")
    if c < 0:
        raise DomainError("Distortion must be non-negative")
    return math.exp(-c) * tau_partition, math.exp(c) * tau_partition


@dataclass
class DimensionBound:
    """A lower bound (or oracle estimate) of a Hausdorff dimension."""

    d: float
    method: str
    tolerance: float
    residual: Optional[float] = None

    def __post_init__(self):
        """Check the method tag and the range of ``d``."""
        if self.method not in METHODS:
            raise DomainError(f"Unknown dimension method: {self.method}")
        upper = math.inf if self.method == "box-oracle" else 1.0
        if not 0.0 <= self.d <= upper:
            raise DomainError(f"Dimension {self.d} outside [0, {upper}]")

    def to_dict(self) -> dict:
        """Serialize the bound."""
        return {
            "d": self.d,
            "method": self.method,
            "tolerance": self.tolerance,
            "residual": self.residual,
        }


def _check_thickness(tau_L: float, tau_R: float) -> None:
    if not (tau_L > 0 and tau_R > 0):
        raise DomainError(f"Thickness values must be positive: {tau_L}, {tau_R}")


def dimension_lower_bound_exact(
    tau_L: float, tau_R: float, tol: float = 1e-12
) -> DimensionBound:
    """Root ``d`` of ``tau_L**d + tau_R**d = (1 + tau_L + tau_R)**d`` by bisection."""
    _check_thickness(tau_L, tau_R)
    if tol <= 0:
        raise DomainError("Tolerance must be positive")
    total = 1.0 + tau_L + tau_R
    a, b = tau_L / total, tau_R / total

    def scaled(d: float) -> float:
        return a**d + b**d - 1.0

    d = bisect(scaled, 0.0, 1.0, xtol=max(tol * 1e-3, 1e-15), maxiter=200)
    return DimensionBound(float(d), "exact-bisection", tol, residual=abs(scaled(d)))


def dimension_lower_bound_log(tau_L: float, tau_R: float) -> DimensionBound:
    """The larger of the two logarithmic lower bounds."""
    _check_thickness(tau_L, tau_R)
    first = math.log1p(tau_R / (1.0 + tau_L)) / math.log1p((1.0 + tau_R) / tau_L)
    second = math.log1p(tau_L / (1.0 + tau_R)) / math.log1p((1.0 + tau_L) / tau_R)
    return DimensionBound(max(first, second), "log-formula", 0.0)


def limit_log_bound(nu: float) -> float:
    """Limit ``1/(1 + nu)`` of the asymmetric log bound as ``lambda -> 1``."""
    return 1.0 / (1.0 + nu)


def asymptotic_log_bound(nu: float, lam_minus_one: float) -> float:
    """Log bound for ``tau_R = 1/(lambda-1)`` and ``tau_L = (lambda-1)**nu``."""
    if lam_minus_one <= 0:
        raise DomainError("lambda must exceed 1")
    return dimension_lower_bound_log(lam_minus_one**nu, 1.0 / lam_minus_one).d


def gap_lemma(
    report_s: ThicknessReport,
    report_u: ThicknessReport,
    hull_s: Interval,
    hull_u: Interval,
    gaps_s: Sequence[Union[Gap, Interval]] = (),
    gaps_u: Sequence[Union[Gap, Interval]] = (),
) -> bool:
    """Whether the left-right gap lemma guarantees an intersection.

    :param gaps_s: Known gaps of the first set; a second hull inside one
        of them defeats the lemma.
    :param gaps_u: Known gaps of the second set.
    """
    if not hull_s.overlaps(hull_u):
        return False
    for gaps, hull in ((gaps_s, hull_u), (gaps_u, hull_s)):
        for gap in gaps:
            interval = gap.interval if isinstance(gap, Gap) else gap
            if interval.contains(hull):
                return False
    return (
        report_s.tau_L * report_u.tau_R > 1.0 and report_s.tau_R * report_u.tau_L > 1.0
    )


def covers_intersect(tree_a: CylinderTree, tree_b: CylinderTree) -> bool:
    """Whether the finest-level covers of two trees intersect."""
    a = tree_a.finest()
    b = tree_b.finest()
    a = a[np.argsort(a[:, 0])]
    b = b[np.argsort(b[:, 0])]
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i, 1] < b[j, 0]:
            i += 1
        elif b[j, 1] < a[i, 0]:
            j += 1
        else:
            return True
    return False


def moran_dimension(r0: float, r1: float, tol: float = 1e-12) -> DimensionBound:
    """Similarity dimension: root of ``r0**d + r1**d = 1``."""
    if not (0 < r0 < 1 and 0 < r1 < 1 and r0 + r1 < 1):
        raise DomainError(f"Ratios need r0, r1 in (0, 1) and r0 + r1 < 1: {r0}, {r1}")

    def equation(d: float) -> float:
        return r0**d + r1**d - 1.0

    d = bisect(equation, 0.0, 1.0, xtol=max(tol * 1e-3, 1e-15), maxiter=200)
    return DimensionBound(float(d), "moran-oracle", tol, residual=abs(equation(d)))


def default_scales(points: np.ndarray) -> np.ndarray:
    """Dyadic box sizes suited to the number of points."""
    count, dim = points.shape
    extent = float(np.max(np.ptp(points, axis=0)))
    levels = max(4, int(math.log2(count) / dim) - 2)
    return extent * 2.0 ** -np.arange(1, levels + 1)


@dataclass
class BoxCount:
    """Box counts behind a box-dimension estimate."""

    scales: list[float] = field(default_factory=list)
    counts: list[int] = field(default_factory=list)


def box_counts(points, scales: Optional[Sequence[float]] = None) -> BoxCount:
    """Count occupied boxes at each scale."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    if len(points) < 1000:
        raise DomainError("Box counting needs at least 1000 points")
    if np.all(np.ptp(points, axis=0) == 0):
        raise DomainError("Box counting of a single point is degenerate")
    if scales is None:
        scales = default_scales(points)
    scales = np.asarray(scales, dtype=float)
    if len(scales) < 4:
        raise DomainError("Box counting needs at least four scales")
    origin = points.min(axis=0)
    counts = []
    for eps in scales:
        boxes = np.floor((points - origin) / eps).astype(np.int64)
        counts.append(len(np.unique(boxes, axis=0)))
    return BoxCount([float(s) for s in scales], counts)


def box_dimension(points, scales: Optional[Sequence[float]] = None) -> DimensionBound:
    """Least-squares slope of ``log N(eps)`` against ``log(1/eps)``."""
    counted = box_counts(points, scales)
    fit = linregress(-np.log(counted.scales), np.log(counted.counts))
    return DimensionBound(
        max(float(fit.slope), 0.0),
        "box-oracle",
        float(fit.stderr),
        residual=float(fit.stderr),
    )
