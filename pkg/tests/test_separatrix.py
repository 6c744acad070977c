# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for separatrices, manifolds and the splitting measurement."""

import math

import numpy as np
import pytest
from scipy.integrate import trapezoid
from scipy.stats import linregress

from stochastic_sea.errors import DomainError, InsufficientPrecision, PrecisionRefusal
from stochastic_sea.maps import RescaledMap, RescaledParams
from stochastic_sea.runconfig import RunConfig
from stochastic_sea.separatrix import (
    LOBE_TOLERANCE,
    FunctionCurve,
    closed_form,
    closed_form_residual,
    energy,
    fit_splitting_slope,
    homoclinic_intersections,
    integrate_flow,
    measure_splitting,
    precision_for,
    predicted_lobe_area,
    splitting_sweep,
    stable_manifold,
    theta_model,
    unstable_manifold,
)


def test_closed_form_solves_the_flow():
    """``3 sech(t / sqrt 2)**2`` solves ``x'' = 2x - x**2``."""
    assert closed_form_residual(np.linspace(-20.0, 20.0, 401)) < 1e-9


def test_closed_form_on_zero_energy():
    """The separatrix loop has zero energy."""
    x, y = closed_form(np.linspace(-5.0, 5.0, 11))
    assert np.max(np.abs(energy((x, y)))) < 1e-12


def test_flow_conserves_energy():
    """The integrator keeps the first integral."""
    start = np.array(closed_form(-10.0), dtype=float)
    trajectory = integrate_flow(start, (0.0, 20.0))
    assert trajectory.energy_drift() < 1e-10
    np.testing.assert_allclose(trajectory.end, closed_form(10.0), atol=1e-5)


def test_flow_rejects_bad_tolerance():
    """The tolerance must be positive."""
    with pytest.raises(DomainError):
        integrate_flow((1.0, 0.0), (0.0, 1.0), tol=0.0)


def test_intersections_of_model_curves():
    """A parabola below the axis crosses it twice at the expected angle."""
    ts = np.linspace(-1.0, 1.0, 201)
    parabola = FunctionCurve.sampled(
        lambda t: (t, 0.5 * t * t - 0.0205), lambda t: (1.0, t), ts
    )
    axis = FunctionCurve.sampled(lambda t: (t, 0.0), lambda t: (1.0, 0.0), ts)
    found = homoclinic_intersections(parabola, axis)
    root = math.sqrt(0.041)
    assert len(found) == 2
    for crossing in found:
        assert abs(crossing.point[0]) == pytest.approx(root, abs=1e-10)
        assert crossing.angle == pytest.approx(math.atan(root), abs=1e-8)
    assert {c.sign for c in found} == {1, -1}


def test_stable_manifold_is_reflected_unstable():
    """``P^s = R o P^u`` on the same parameters."""
    params = RescaledParams.from_h(1.0)
    wu = unstable_manifold(params, order=12, sample=False)
    ws = stable_manifold(params, order=12, sample=False)
    planar = RescaledMap(params.delta, params.lam)
    for xi in (0.1 * wu.xi0, 0.5 * wu.xi0, wu.xi0):
        np.testing.assert_allclose(
            np.array(ws.point(xi), dtype=float),
            np.array(planar.involution(wu.point(xi)), dtype=float),
            atol=1e-12,
        )


def test_jet_invariance():
    """The jet satisfies ``F(P(xi)) = P(lambda xi)`` on its fundamental domain."""
    wu = unstable_manifold(RescaledParams.from_h(1.0), order=18, sample=False)
    assert wu.defect < 1e-12
    assert wu.jet_defect() < 1e-12


def test_precision_policy():
    """Small h needs extended precision and very small h is refused."""
    assert precision_for(1.0).bits == 53
    assert precision_for(0.5).bits >= 128
    with pytest.raises(PrecisionRefusal):
        precision_for(0.2)


def test_splitting_at_h_one():
    """Adjacent lobes have equal area and the measurement is resolved."""
    report = measure_splitting(RescaledParams.from_h(1.0))
    a, b = report.lobe_areas
    assert a == pytest.approx(b, rel=0.02)
    assert report.accuracy <= LOBE_TOLERANCE * report.lobe_area
    assert report.angle > 0.0
    assert report.precision_bits == 53


def test_lobe_tolerance():
    """Areas that disagree by more than the tolerance ask for more bits."""
    assert LOBE_TOLERANCE == 0.02
    assert RunConfig()["splitting.lobe_tolerance"] == LOBE_TOLERANCE
    with pytest.raises(InsufficientPrecision) as info:
        measure_splitting(RescaledParams.from_h(1.0), tolerance=1e-300)
    assert info.value.required_bits == 128


def test_jet_defect_order():
    """The jet defect of an order-``p`` jet shrinks like ``xi**(p + 1)``."""
    order = 4
    wu = unstable_manifold(RescaledParams.from_h(1.0), order=order, sample=False)
    scales = np.array([8.0, 4.0, 2.0, 1.0])
    with wu.prec.context():
        defects = [wu.jet_defect(wu.xi0 * wu.prec.num(s)) for s in scales]
    fit = linregress(np.log(scales), np.log(defects))
    assert fit.slope == pytest.approx(order + 1, abs=0.5)


def test_prediction_model():
    """Half a period of the splitting model has the predicted area."""
    h = 1.0
    t = np.linspace(0.0, h / 2.0, 20001)
    area = trapezoid(theta_model(t, h), t)
    assert area == pytest.approx(predicted_lobe_area(h), rel=1e-6)


def test_slope_fit_needs_three_points():
    """A single value of h has no slope."""
    with pytest.raises(DomainError):
        fit_splitting_slope([])


@pytest.mark.slow
def test_splitting_scaling():
    """``log(area h**5)`` against ``1/h`` has slope close to ``-2 pi**2``."""
    reports = splitting_sweep(np.linspace(0.7, 1.4, 8))
    fit = fit_splitting_slope(reports)
    assert fit.relative_error < 0.15
