# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for the standard map experiments."""

import math

import numpy as np
import pytest

from stochastic_sea.errors import DomainError, ScanBudgetExhausted
from stochastic_sea.stdmap_lab import (
    ModelTangencyFamily,
    ShearedStandardFamily,
    chaotic_box_dimension,
    covering_radius,
    cyclic_trace_defect,
    delta_k,
    density_check,
    det_defect,
    duarte_bound,
    find_periodic,
    generate_orbit,
    island_survey,
    lyapunov,
    lyapunov_ensemble,
    tangency_scan,
    unfolding_exponent,
)
from stochastic_sea.stdmap_lab.orbits import finite_time_exponents


def _wrapped_distance(value, target):
    d = abs(value - target) % 1.0
    return min(d, 1.0 - d)


def test_orbit_is_reproducible():
    """Same parameters, same points."""
    first = generate_orbit(5.0, seed=3, length=200, stride=2)
    second = generate_orbit(5.0, seed=3, length=200, stride=2)
    assert np.array_equal(first.points, second.points)
    assert first.points.shape == (101, 2)
    assert np.all((first.points >= 0.0) & (first.points < 1.0))
    other = generate_orbit(5.0, seed=4, length=200, stride=2)
    assert not np.array_equal(first.points, other.points)


def test_orbit_validation():
    """Length and stride must be positive."""
    with pytest.raises(DomainError):
        generate_orbit(1.0, seed=0, length=0)
    with pytest.raises(DomainError):
        generate_orbit(1.0, seed=0, length=10, stride=0)


def test_area_preserved_along_orbit():
    """``det Df = 1`` at every point."""
    orbit = generate_orbit(5.0, seed=11, length=500)
    assert det_defect(5.0, orbit.points) < 1e-12


def test_integrable_exponent():
    """Shear dynamics at ``k = 0`` has zero exponent."""
    estimate = lyapunov(0.0, (0.3141, 0.2718), 10_000)
    assert abs(estimate.value) < 0.01
    assert estimate.method == "qr"


def test_chaotic_exponent():
    """Large ``k`` gives an exponent near ``log(pi k)``."""
    estimate = lyapunov(10.0, (0.123, 0.456), 10_000)
    assert estimate.value == pytest.approx(math.log(math.pi * 10.0), abs=0.5)


def test_divergence_matches_qr():
    """Both estimators agree at large ``k``."""
    point = (0.123, 0.456)
    qr = lyapunov(10.0, point, 10_000, "qr").value
    divergence = lyapunov(10.0, point, 10_000, "divergence").value
    assert divergence == pytest.approx(qr, abs=0.3)


def test_exponents_agree_at_thousand():
    """At ``k = 1000`` both estimators are well above three and within 5%."""
    point = (0.3141, 0.2718)
    qr = lyapunov(1000.0, point, 10_000, "qr").value
    divergence = lyapunov(1000.0, point, 10_000, "divergence").value
    assert qr > 3.0
    assert divergence > 3.0
    assert divergence == pytest.approx(qr, rel=0.05)


def test_lyapunov_validation():
    """Too short orbits and unknown methods are refused."""
    with pytest.raises(DomainError):
        lyapunov(1.0, (0.1, 0.1), 100)
    with pytest.raises(DomainError):
        lyapunov(1.0, (0.1, 0.1), 10_000, "svd")
    with pytest.raises(DomainError):
        lyapunov_ensemble(1.0, [])


def test_finite_time_exponents_order():
    """Exponents come back in input order."""
    points = [(0.3141, 0.2718), (0.123, 0.456)]
    values = finite_time_exponents(10.0, points, 1_000)
    assert values.shape == (2,)
    assert values[0] == pytest.approx(finite_time_exponents(10.0, points[:1], 1_000)[0])


def test_fixed_points():
    """Fixed points at ``(0, 0)`` and ``(1/2, 0)`` with traces ``2 +- 2 pi k``."""
    k = 0.3
    saddle = find_periodic(k, 1, (0.02, 0.01))
    assert saddle is not None
    assert _wrapped_distance(saddle.center[0], 0.0) < 1e-9
    assert _wrapped_distance(saddle.center[1], 0.0) < 1e-9
    assert saddle.classification == "saddle"
    assert saddle.trace == pytest.approx(2.0 + 2.0 * math.pi * k)

    island = find_periodic(k, 1, (0.52, 0.01))
    assert island is not None
    assert island.center[0] == pytest.approx(0.5)
    assert island.elliptic
    assert island.trace == pytest.approx(0.11504, abs=1e-5)


def test_period_two_trace_is_cyclic():
    """The trace of ``Df**2`` is the same from both points of the orbit."""
    record = find_periodic(0.3, 2, (0.01, 0.49))
    assert record is not None
    assert record.period == 2
    assert cyclic_trace_defect(record) < 1e-8


def test_period_validation():
    """Periods start at one."""
    with pytest.raises(DomainError):
        find_periodic(0.3, 0, (0.1, 0.1))


def test_island_survey_deduplicates():
    """A coarse lattice finds both fixed points once each."""
    records = island_survey(0.3, periods=(1,), grid=4)
    assert len(records) == 2
    assert sorted(r.classification for r in records) == ["elliptic", "saddle"]
    assert records[0].row()[:2] == [0.3, 1]


def test_density_radius_and_bound():
    """``delta_k = 4 / k**(1/3)`` and the dimension bound."""
    assert delta_k(64.0) == pytest.approx(1.0)
    assert duarte_bound(10.0) == pytest.approx(0.7613, abs=1e-4)
    assert duarte_bound(1000.0) == pytest.approx(2 * math.log(2) / math.log(2.9))
    with pytest.raises(DomainError):
        delta_k(0.0)


def test_density_check_passes_for_large_k():
    """Any orbit is ``delta_k``-dense once ``delta_k`` exceeds the torus diameter."""
    orbit = generate_orbit(64.0, seed=5, length=2_000)
    report = density_check(64.0, orbit, probes=16)
    assert report.passed
    assert report.row() == [64.0, report.delta_target, report.achieved, 2_000]


def test_covering_radius_wraps():
    """A point near a corner covers the opposite corner."""
    points = np.array([[0.99, 0.99]])
    radius = covering_radius(points, probes=2)
    assert radius == pytest.approx(math.hypot(0.26, 0.26))


def test_box_dimension_needs_orbits():
    """An empty ensemble has no dimension."""
    with pytest.raises(DomainError):
        chaotic_box_dimension(10.0, [])


def test_model_scan_finds_tangency():
    """The parabola family is tangent at ``k*`` at every level."""
    family = ModelTangencyFamily(k_star=7.3)
    lines = []
    tree = tangency_scan(family, (6.5, 7.5), depth=2, steps=16, echo=lines.append)
    assert len(lines) == len(tree.nodes())
    assert tree.nested()
    assert len(tree.tangencies) == 1
    assert tree.tangencies[0] == pytest.approx(7.3, abs=1e-4)
    assert len(tree.root.children) == 1
    assert tree.root.children[0].depth == 2
    assert tree.evaluations <= 400
    assert not tree.undecided
    rows = tree.rows()
    assert rows[0][:3] == [1, 6.5, 7.5]


def test_model_unfolding_is_linear():
    """The separation grows like ``|k - k*|``."""
    fit = unfolding_exponent(ModelTangencyFamily(k_star=7.3), 7.3)
    assert fit.beta == pytest.approx(1.0, abs=1e-6)
    assert fit.c == pytest.approx(1.0, rel=1e-6)


def test_strict_scan_budget():
    """A budget spent on the first sweep leaves the scan undecided."""
    family = ModelTangencyFamily(k_star=7.3)
    tree = tangency_scan(family, (6.5, 7.5), depth=2, steps=16, budget=17)
    assert tree.undecided
    with pytest.raises(ScanBudgetExhausted) as info:
        tangency_scan(family, (6.5, 7.5), depth=2, steps=16, budget=17, strict=True)
    assert info.value.exit_code == 5
    assert info.value.tree.evaluations == 17


def test_scan_keeps_tangency_of_undecided_child():
    """A child interval cut short by the budget keeps its parent's tangency."""
    family = ModelTangencyFamily(k_star=7.3)
    tree = tangency_scan(family, (6.5, 7.5), depth=2, steps=16, budget=50)
    assert tree.root.tangencies
    assert tree.root.children[0].undecided
    assert tree.undecided_share == pytest.approx(0.5)
    assert len(tree.tangencies) == 1
    assert tree.tangencies[0] == pytest.approx(7.3, abs=1e-3)
    assert tree.to_dict()["tangencies"] == tree.tangencies


@pytest.mark.parametrize(
    "interval, depth, budget",
    [
        ((7.5, 6.5), 2, 400),
        ((6.5, 7.5), 0, 400),
        ((6.5, 7.5), 7, 400),
        ((6.5, 7.5), 2, 10),
    ],
)
def test_scan_validation(interval, depth, budget):
    """Empty intervals, depths outside ``[1, 6]`` and tiny budgets are refused."""
    with pytest.raises(DomainError):
        tangency_scan(
            ModelTangencyFamily(k_star=7.3), interval, depth=depth, budget=budget
        )


@pytest.mark.slow
def test_sheared_scan():
    """Tangency of the sheared stable curve of ``f_k``."""
    family = ShearedStandardFamily(k_star=7.3)
    tree = tangency_scan(family, (6.5, 7.5), depth=1, steps=16)
    assert any(abs(k - 7.3) < 1e-4 for k in tree.tangencies)


@pytest.mark.slow
def test_density_at_thousand():
    """An orbit of ``10**6`` points is ``delta_k``-dense at ``k = 1000``."""
    orbit = generate_orbit(1000.0, seed=7, length=10**6, stride=1)
    assert density_check(1000.0, orbit).passed


@pytest.mark.slow
def test_box_dimension_at_thousand():
    """The orbit closure at ``k = 1000`` is at least as thick as the bound."""
    orbit = generate_orbit(1000.0, seed=7, length=10**6)
    estimate = chaotic_box_dimension(1000.0, [orbit])
    assert estimate.d >= duarte_bound(1000.0) - 0.05
