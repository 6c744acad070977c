# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for thickness, gaps and dimension bounds."""

import math

import numpy as np
import pytest

from stochastic_sea.cantor_core import (
    AffineBranch,
    CantorSystem,
    DimensionBound,
    Interval,
    PolynomialBranch,
    asymptotic_log_bound,
    box_dimension,
    converged_thickness,
    covers_intersect,
    dimension_lower_bound_exact,
    dimension_lower_bound_log,
    distortion_estimate,
    enumerate_gaps,
    gap_lemma,
    lateral_thickness,
    limit_log_bound,
    moran_dimension,
    partition_thickness,
    refine,
    thickness_interval,
)
from stochastic_sea.errors import DomainError, SystemValidationError


def test_exact_bound_middle_thirds():
    """Equal thickness one gives log 2 / log 3."""
    bound = dimension_lower_bound_exact(1.0, 1.0)
    assert bound.method == "exact-bisection"
    assert bound.d == pytest.approx(math.log(2) / math.log(3), abs=1e-10)


def test_middle_thirds_thickness(middle_thirds):
    """Every gap of the middle-thirds set has both bridges as long as itself."""
    report = lateral_thickness(refine(middle_thirds, 8))
    assert report.tau_L == pytest.approx(1.0, rel=1e-9)
    assert report.tau_R == pytest.approx(1.0, rel=1e-9)
    assert report.depth == 8


def test_affine_thickness():
    """Ratios 0.5 and 0.2 leave a gap of 0.3."""
    tau_L, tau_R = partition_thickness(CantorSystem.affine(0.5, 0.2))
    assert tau_L == pytest.approx(5.0 / 3.0)
    assert tau_R == pytest.approx(2.0 / 3.0)


def test_middle_fifths_bound():
    """Middle-fifths thickness is 2, so the bound is log 2 / log(5/2)."""
    report = lateral_thickness(refine(CantorSystem.middle_fifths(), 6))
    assert report.tau_L == pytest.approx(2.0, rel=1e-9)
    bound = dimension_lower_bound_exact(report.tau_L, report.tau_R)
    assert bound.d == pytest.approx(math.log(2) / math.log(2.5), abs=1e-10)


def test_affine_bound_equals_moran():
    """For affine systems the thickness bound is the similarity dimension."""
    rng = np.random.default_rng(3)
    for _ in range(100):
        r0, r1 = rng.uniform(0.01, 0.47, 2)
        gap = 1.0 - r0 - r1
        exact = dimension_lower_bound_exact(r0 / gap, r1 / gap)
        assert exact.d == pytest.approx(moran_dimension(r0, r1).d, abs=1e-8)


def test_log_bound_below_exact():
    """The logarithmic bound never exceeds the exact one."""
    rng = np.random.default_rng(11)
    taus = 10.0 ** rng.uniform(-3, 3, (10_000, 2))
    for tau_L, tau_R in taus:
        log = dimension_lower_bound_log(tau_L, tau_R).d
        exact = dimension_lower_bound_exact(tau_L, tau_R).d
        assert log <= exact + 1e-12


def test_bound_rejects_nonpositive_thickness():
    """Thickness must be positive."""
    with pytest.raises(DomainError):
        dimension_lower_bound_exact(0.0, 1.0)
    with pytest.raises(DomainError):
        dimension_lower_bound_log(1.0, -2.0)


def test_asymptotic_log_bound_increases_to_limit():
    """The asymmetric log bound grows towards 1/(1 + nu) as lambda -> 1."""
    values = [asymptotic_log_bound(0.1, eps) for eps in (1e-4, 1e-6, 1e-8)]
    assert values == sorted(values)
    assert 0.88 <= values[-1] < limit_log_bound(0.1)
    assert limit_log_bound(0.1) == pytest.approx(1.0 / 1.1)


def test_gap_lemma_matches_brute_force():
    """Random affine pairs satisfying the lemma have intersecting covers."""
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 50:
        r = rng.uniform(0.3, 0.48, 4)
        first = CantorSystem.affine(r[0], r[1])
        shift = rng.uniform(-0.4, 0.4)
        second = CantorSystem(
            Interval(shift, shift + 1.0),
            (AffineBranch(r[2], shift), AffineBranch(r[3], shift + 1.0 - r[3])),
        )
        report_s = lateral_thickness(refine(first, 3))
        report_u = lateral_thickness(refine(second, 3))
        gaps_s = enumerate_gaps(refine(first, 3))
        gaps_u = enumerate_gaps(refine(second, 3))
        if not gap_lemma(report_s, report_u, first.hull, second.hull, gaps_s, gaps_u):
            continue
        checked += 1
        assert covers_intersect(refine(first, 12), refine(second, 12))


def test_gap_lemma_needs_linked_hulls():
    """Disjoint hulls never intersect."""
    report = lateral_thickness(refine(CantorSystem.middle_fifths(), 3))
    assert not gap_lemma(report, report, Interval(0.0, 1.0), Interval(2.0, 3.0))


def test_converged_thickness_affine():
    """Affine systems converge immediately."""
    report = converged_thickness(CantorSystem.middle_thirds(), max_depth=8)
    assert report.converged
    assert report.tau_L == pytest.approx(1.0)


def test_distortion_zero_for_affine(middle_thirds):
    """Affine branches have no distortion."""
    assert distortion_estimate(middle_thirds, 4).c == 0.0


def test_distortion_positive_for_quadratic():
    """The quadratic branch distorts and the enclosure brackets the thickness."""
    system = CantorSystem.quadratic_perturbed()
    estimate = distortion_estimate(system, 4)
    assert estimate.c > 0.0
    tau_L, _ = partition_thickness(system)
    low, high = thickness_interval(tau_L, estimate.c)
    assert low < tau_L < high


def test_distortion_matches_dense_derivatives():
    """Secant spreads agree with chained derivatives on a dense grid."""
    system = CantorSystem.quadratic_perturbed()
    depth = 4
    values = np.linspace(system.hull.lo, system.hull.hi, 4001)[None, :]
    slopes = np.ones_like(values)
    worst = 0.0
    for _ in range(depth):
        chained, images = [], []
        for index in (0, 1):
            branch = system.branches[index]
            chained.append(slopes * np.abs(branch.derivative(values, system.hull)))
            images.append(system.apply(index, values))
        slopes, values = np.concatenate(chained), np.concatenate(images)
        spread = np.log(slopes.max(axis=1)) - np.log(slopes.min(axis=1))
        worst = max(worst, float(spread.max()))

    estimate = distortion_estimate(system, depth)
    assert estimate.c == pytest.approx(worst, rel=0.1)
    assert estimate.c <= worst * (1 + 1e-9)


def test_invalid_systems():
    """Overlapping images and unknown names are rejected."""
    with pytest.raises(SystemValidationError):
        CantorSystem.builtin("middle-sevenths")
    with pytest.raises(SystemValidationError):
        CantorSystem.from_json("{not json")
    with pytest.raises(SystemValidationError):
        CantorSystem(
            Interval(0.0, 1.0), (AffineBranch(0.6, 0.0), AffineBranch(0.6, 0.4))
        ).validate()


def test_system_json_round_trip():
    """A polynomial system survives its JSON form."""
    system = CantorSystem.quadratic_perturbed()
    again = CantorSystem.from_dict(system.to_dict())
    assert isinstance(again.branches[0], PolynomialBranch)
    x = np.linspace(0.0, 1.0, 5)
    np.testing.assert_allclose(again.apply(0, x), system.apply(0, x))


def test_box_dimension_of_segment():
    """A dense segment has box dimension one."""
    points = np.linspace(0.0, 1.0, 20_000)[:, None] * np.array([[1.0, 0.5]])
    bound = box_dimension(points, 2.0 ** -np.arange(4, 10))
    assert bound.method == "box-oracle"
    assert bound.d == pytest.approx(1.0, abs=0.05)


def test_box_dimension_needs_points():
    """Small samples are refused."""
    with pytest.raises(DomainError):
        box_dimension(np.zeros((10, 2)))


def test_dimension_bound_range():
    """Bounds outside [0, 1] are invalid for thickness methods."""
    with pytest.raises(DomainError):
        DimensionBound(1.5, "exact-bisection", 1e-12)
    with pytest.raises(DomainError):
        DimensionBound(0.5, "guess", 1e-12)
