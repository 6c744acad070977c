# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for the map families and their saddles."""

import math

import mpmath
import numpy as np
import pytest

from stochastic_sea.errors import DomainError
from stochastic_sea.maps import (
    AffineChange,
    HenonParams,
    RescaledMap,
    RescaledParams,
    StandardMapLift,
    StandardMapParams,
    TaylorSeries,
    classify_trace,
    conjugacy_defect,
    delta_of_h,
    henon_apply,
    henon_fixed_points,
    henon_inverse,
    lambda_of_delta,
    mu,
    rescaled_saddle,
    saddle_data,
    std_apply,
    std_inverse,
    std_jacobian,
    upsilon,
    upsilon_inverse,
)
from stochastic_sea.precision import WorkingPrecision


@pytest.fixture
def points():
    """Random points of the plane."""
    return np.random.default_rng(0).uniform(-1.0, 2.0, (100, 2))


def test_standard_map_area_preserving(points):
    """The Jacobian of the standard map has determinant one."""
    for k in (0.0, 0.3, 10.0, 1000.0):
        for point in points[:20]:
            det = std_jacobian(StandardMapParams(k), point).det
            assert det == pytest.approx(1.0, abs=1e-12)


def test_standard_map_inverse(points):
    """The inverse undoes one step on the torus."""
    params = StandardMapParams(1.7)
    for point in np.mod(points, 1.0)[:20]:
        x, y = std_inverse(params, std_apply(params, point))
        assert min(abs(x - point[0]), 1 - abs(x - point[0])) < 1e-12
        assert min(abs(y - point[1]), 1 - abs(y - point[1])) < 1e-12


def test_henon_parabolic_point():
    """At a = -1 the Henon family has one parabolic fixed point."""
    (fixed,) = henon_fixed_points(HenonParams(-1.0))
    assert fixed.point == (-1.0, -1.0)
    assert fixed.classification == "parabolic"
    assert henon_fixed_points(HenonParams(-2.0)) == []


def test_henon_inverse(points):
    """Henon inverse round trip."""
    params = HenonParams(0.4)
    for point in points[:10]:
        image = henon_apply(params, point)
        np.testing.assert_allclose(henon_inverse(params, image), point)


def test_conjugacy_identity(points):
    """The rescaled family is the quadratic family in scaled coordinates."""
    params = RescaledParams.from_delta(0.3)
    assert conjugacy_defect(params, points) < 1e-12


def test_upsilon_round_trip(points):
    """The affine change is invertible."""
    change = AffineChange(0.3)
    for point in points[:10]:
        image = upsilon(change, point)
        np.testing.assert_allclose(upsilon_inverse(change, image), point)
    with pytest.raises(DomainError):
        AffineChange(0.0)


def test_delta_of_h_inverts_lambda():
    """``delta(h)`` matches the closed form ``(e**h - 1) / sqrt(2 e**h)``."""
    for h in (1e-3, 0.2, 0.7, 1.0, 1.4, 5.0):
        delta = delta_of_h(h)
        assert math.log(lambda_of_delta(delta)) == pytest.approx(h, rel=1e-14)
        closed = math.expm1(h) / math.sqrt(2 * math.exp(h))
        assert delta == pytest.approx(closed, rel=1e-12)


def test_mu_underflow_flagged():
    """Tiny splittings underflow in double and survive in extended precision."""
    small = mu(0.01)
    assert small.underflow
    assert small.value == 0.0
    wide = mu(0.01, prec=WorkingPrecision(128))
    assert not wide.underflow
    assert wide.value > 0
    assert float(mpmath.log(wide.value)) == pytest.approx(small.log_value, rel=1e-12)


def test_mu_rejects_bad_arguments():
    """h and theta1 must be positive."""
    with pytest.raises(DomainError):
        mu(0.0)
    with pytest.raises(DomainError):
        mu(1.0, theta1=0.0)


def test_standard_saddle_eigenvectors():
    """The saddle at the origin of f_2 has the eigenvectors of its Jacobian."""
    saddle = saddle_data(StandardMapLift(2.0), (0.0, 0.0))
    matrix = np.array([[1.0 + 4.0 * math.pi, 1.0], [4.0 * math.pi, 1.0]])
    np.testing.assert_allclose(
        matrix @ saddle.unstable, saddle.lam * saddle.unstable, atol=1e-10
    )
    np.testing.assert_allclose(
        matrix @ saddle.stable, saddle.stable / saddle.lam, atol=1e-10
    )
    trace = 2.0 + 4.0 * math.pi
    assert saddle.lam == pytest.approx((trace + math.sqrt(trace * trace - 4.0)) / 2.0)


def test_elliptic_point_is_not_a_saddle():
    """The fixed point (1/2, 0) of f_0.3 is elliptic."""
    with pytest.raises(DomainError):
        saddle_data(StandardMapLift(0.3), (0.5, 0.0))


def test_rescaled_saddle_closed_form():
    """Closed-form eigendata agree with the numerical ones."""
    params = RescaledParams.from_h(1.0)
    closed = rescaled_saddle(params)
    numeric = saddle_data(RescaledMap(params.delta, params.lam), (0.0, 0.0))
    assert numeric.lam == pytest.approx(closed.lam, rel=1e-12)
    assert abs(abs(np.dot(closed.unstable, numeric.unstable)) - 1.0) < 1e-12
    assert abs(abs(np.dot(closed.stable, numeric.stable)) - 1.0) < 1e-12


def test_rescaled_reversor(points):
    """The involution conjugates the map to its inverse."""
    params = RescaledParams.from_h(0.8)
    planar = RescaledMap(params.delta, params.lam)
    for point in points[:10]:
        left = planar.involution(planar(planar.involution(point)))
        np.testing.assert_allclose(left, planar.inverse(point), atol=1e-12)


def test_taylor_sin_cos():
    """Series of sin and cos of the variable."""
    s, c = TaylorSeries.variable(5).sin_cos()
    assert s[1] == pytest.approx(1.0)
    assert s[3] == pytest.approx(-1.0 / 6.0)
    assert c[2] == pytest.approx(-0.5)
    assert s(0.1) == pytest.approx(math.sin(0.1), abs=1e-8)


def test_classify_trace():
    """Trace thresholds."""
    assert classify_trace(0.115) == "elliptic"
    assert classify_trace(2.0) == "parabolic"
    assert classify_trace(2.0 + 2.0 * math.pi) == "saddle"
