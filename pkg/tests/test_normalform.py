# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for the Birkhoff normal form."""

import math

import numpy as np
import pytest

from stochastic_sea.errors import DomainError
from stochastic_sea.maps import RescaledParams
from stochastic_sea.normalform import (
    NormalFormChange,
    NormalFormSeries,
    birkhoff_normalize,
    conjugacy_residual,
    delta_estimates,
    nonresonant_defect,
    normal_apply,
    normal_inverse,
    residual_slope,
)


@pytest.fixture(scope="module")
def normal_form():
    """Normal form of order three at h = 1."""
    params = RescaledParams.from_h(1.0)
    change, series = birkhoff_normalize(params, order=3)
    return params, change, series


def test_delta_at_zero(normal_form):
    """``Delta(0) = exp(h)``."""
    _, _, series = normal_form
    assert series.delta(0.0) == pytest.approx(math.e, abs=1e-12)
    assert series.lam == pytest.approx(math.e, abs=1e-12)


def test_residual_order():
    """The conjugacy residual shrinks like ``r**(2M + 2)``."""
    slope = residual_slope(RescaledParams.from_h(1.0), order=3)
    assert slope == pytest.approx(8.0, abs=0.5)


def test_nonresonant_terms_removed(normal_form):
    """Only resonant monomials survive the conjugation."""
    params, change, series = normal_form
    assert nonresonant_defect(change, series, params) < 1e-9


def test_stable_component_starts_reciprocal(normal_form):
    """The second component starts from ``1/lambda``."""
    _, _, series = normal_form
    assert series.stable_coefficients[0] == pytest.approx(1.0 / series.lam)
    assert series.inverse_consistency() >= 0.0


def test_change_inverse(normal_form):
    """The truncated change and its inverse agree near the saddle."""
    _, change, _ = normal_form
    points = np.random.default_rng(1).uniform(-0.01, 0.01, (20, 2))
    assert change.inverse_defect(points) < 1e-9


def test_normal_map_inverse(normal_form):
    """``N`` preserves ``xy`` and is inverted exactly."""
    _, _, series = normal_form
    point = (0.03, 0.04)
    image = normal_apply(series, point)
    assert image[0] * image[1] == pytest.approx(0.0012, rel=1e-12)
    np.testing.assert_allclose(normal_inverse(series, image), point, rtol=1e-12)


def test_residual_small_near_saddle(normal_form):
    """The conjugacy holds to high order on a small circle."""
    params, change, series = normal_form
    assert conjugacy_residual(change, series, params, 0.01) < 1e-10


def test_scaled_series(normal_form):
    """Rescaling coordinates multiplies ``a_m`` by ``sigma**m``."""
    _, _, series = normal_form
    scaled = series.scaled(-2.0)
    assert scaled.coefficients[1] == pytest.approx(-2.0 * series.coefficients[1])
    assert scaled.s0 == pytest.approx(series.s0 / 2.0)
    assert scaled.delta(0.01) == pytest.approx(series.delta(-0.02))


def test_series_round_trip(normal_form):
    """Series and change survive their JSON forms."""
    _, change, series = normal_form
    again = NormalFormSeries.from_dict(series.to_dict())
    assert again.coefficients == pytest.approx(series.coefficients)
    change_again = NormalFormChange.from_dict(change.to_dict())
    np.testing.assert_allclose(change_again((0.01, 0.02)), change((0.01, 0.02)))


def test_delta_estimates(normal_form):
    """``log Delta`` stays positive on the working radius."""
    _, _, series = normal_form
    estimate = delta_estimates(series)
    assert estimate.min_log_delta > 0.0
    assert estimate.max_first > 0.0


def test_strict_radius(normal_form):
    """Strict evaluation refuses arguments beyond the working radius."""
    _, _, series = normal_form
    with pytest.raises(DomainError):
        series.delta(1.0, strict=True)


def test_negative_order_rejected():
    """The order must be non-negative."""
    with pytest.raises(DomainError):
        birkhoff_normalize(RescaledParams.from_h(1.0), order=-1)
