# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for the horseshoe pipeline."""

import math

import numpy as np
import pytest

from stochastic_sea.cantor_core import dimension_lower_bound_exact
from stochastic_sea.errors import DomainError, GeometryError, WindowExitError
from stochastic_sea.horseshoe import (
    AffineHorseshoe,
    ClassFParams,
    ConeFieldSpec,
    PartitionGeometry,
    angle_bounds,
    choose_n,
    classF_check,
    dimension_pipeline,
    distortion_bound,
    fit_class_params,
    kappa_search,
    n_bracket,
    orbit_returns,
    return_map,
    synthetic_partition,
    synthetic_pipeline,
    verify_cones,
)
from stochastic_sea.horseshoe.classf import EPS_FLOOR, GAMMA_FLOOR
from stochastic_sea.normalform import normal_apply

LOG_RATIO = math.log(2.0) / math.log(3.0)


def test_middle_thirds_horseshoe():
    """Two middle-thirds factors give ``2 log 2 / log 3``."""
    result = synthetic_pipeline(AffineHorseshoe.from_thickness(1.0, 1.0))
    assert result.distortion < 1e-10
    assert abs(result.total - 2.0 * LOG_RATIO) < 1e-8
    assert result.class_report.ok
    assert result.stable.sound and result.unstable.sound


def test_asymmetric_horseshoe():
    """Partition thickness is read off the affine pieces."""
    result = synthetic_pipeline(AffineHorseshoe.from_thickness(1.0, 2.0))
    assert result.partition.stable_thickness == pytest.approx((1.0, 2.0))
    expected = dimension_lower_bound_exact(1.0, 2.0).d
    assert result.total == pytest.approx(2.0 * expected, abs=1e-8)
    assert result.log_total <= result.total + 1e-12


def test_affine_ratios_validated():
    """Ratios must leave a gap."""
    with pytest.raises(DomainError):
        AffineHorseshoe(0.6, 0.5)
    with pytest.raises(DomainError):
        AffineHorseshoe.linear(2.0)
    with pytest.raises(DomainError):
        AffineHorseshoe.from_thickness(0.0, 1.0)


def test_linear_cones():
    """Diagonal branches keep both cone fields with growth ``lambda``."""
    model = AffineHorseshoe.linear(3.0)
    report = verify_cones(model, ConeFieldSpec(1.0))
    assert report.invariant
    assert report.passed
    assert report.unstable_growth[0] == pytest.approx(3.0)
    assert report.unstable_growth[0] / report.growth_floor == pytest.approx(3.0**0.1)


def test_kappa_search_all_pass():
    """Every aspect passes for a diagonal map."""
    search = kappa_search(AffineHorseshoe.linear(3.0), grid=21)
    assert len(search.passing) == 41
    assert search.interval == pytest.approx((1e-3, 10.0))
    assert search.best().passed


def test_cone_spec_rejects_zero():
    """The aspect must be positive."""
    with pytest.raises(DomainError):
        ConeFieldSpec(0.0)


def test_angle_bounds():
    """Both angle inequalities hold for a unit-determinant matrix."""
    a = np.array([[2.0, 1.0], [1.0, 1.0]])
    b = a + np.array([[0.01, -0.02], [0.0, 0.03]])
    bounds = angle_bounds(a, [1.0, 0.0], [1.0, 1.0], b)
    assert bounds.holds
    first, second = bounds.margins
    assert first >= 0 and second >= 0

    bounds = angle_bounds(np.eye(2), [1.0, 0.0], [0.0, 1.0])
    assert bounds.lhs_pair == pytest.approx(1.0)
    assert bounds.margins[1] is None

    with pytest.raises(DomainError):
        angle_bounds(a, [0.0, 0.0], [1.0, 0.0])


def test_class_parameters_of_affine_model():
    """An affine model needs no off-diagonal or distortion allowance."""
    model = AffineHorseshoe.from_thickness(1.0, 1.0)
    params = fit_class_params(model, grid=9)
    assert params.eps == EPS_FLOOR
    assert params.gamma == GAMMA_FLOOR
    assert params.C_star == 2.0
    assert distortion_bound(params) == pytest.approx(20 * GAMMA_FLOOR)
    assert classF_check(model, params, grid=9).ok


def test_class_check_reports_failures():
    """Separation below ``eps/gamma`` is reported, not raised."""
    model = AffineHorseshoe.from_thickness(1.0, 1.0)
    report = classF_check(model, ClassFParams(2.0, 0.1, 0.1), grid=9)
    assert not report.ok
    assert report.failures() == ["5"]
    assert report.distortion == pytest.approx(4 * 5 * 0.1 + 0.2)

    with pytest.raises(DomainError):
        ClassFParams(-1.0, 0.1, 0.1)


@pytest.mark.parametrize("values", [(0.0, 0.1, 0.1), (2.0, 0.0, 0.1), (2.0, 0.1, 0.0)])
def test_class_parameters_positive(values):
    """Zero constants are outside the class."""
    with pytest.raises(DomainError):
        ClassFParams(*values)


def test_partition_from_heteroclinic():
    """Pieces ``[0, x_s/lam]`` and ``[1, x_s]``."""
    lam = math.exp(10.0)
    partition = PartitionGeometry.from_heteroclinic(1.5, 2.0, lam)
    assert partition.stable[1].lo == 1.0
    assert partition.stable[1].hi == 1.5
    gap = 1.0 - 1.5 / lam
    tau_L, tau_R = partition.stable_thickness
    assert tau_R == pytest.approx(0.5 / gap)
    assert tau_L == pytest.approx((1.5 / lam) / gap)
    assert partition.region == (1.5, 2.0)


@pytest.mark.parametrize("x_s", [0.9, 1.0, 3.0])
def test_partition_bounds(x_s):
    """Coordinates must lie in ``(1, lam**0.1)``."""
    with pytest.raises(GeometryError):
        synthetic_partition(x_s, math.exp(10.0))


def test_choose_n_at_one():
    """``n = 7`` at ``h = 1``."""
    assert choose_n(1.0, 0.1, 1.0) == 7
    target, power, upper = n_bracket(1.0, 0.1, 1.0, 7)
    assert power == -14.0
    assert target <= power < upper


@pytest.mark.parametrize("h", list(np.linspace(0.7, 1.4, 8)))
def test_choose_n_bracket(h):
    """``lambda**-2n`` sits between ``mu h**(1+nu)`` and ``lambda**2`` times it."""
    target, power, upper = n_bracket(h, 0.1, 1.0, choose_n(h))
    assert target <= power < upper


def test_choose_n_grows():
    """Smaller ``h`` needs more iterates."""
    assert choose_n(0.8) > choose_n(1.0)
    with pytest.raises(DomainError):
        choose_n(1.0, nu=0.0)


@pytest.fixture(scope="module")
def model_at_one():
    """Renormalized return map at ``h = 1``."""
    return return_map(1.0, 0.1, 1.0)


def test_return_map_at_one(model_at_one):
    """Seven iterates and two rectangles with a clear gap."""
    assert model_at_one.n == 7
    assert model_at_one.gap() >= 0.05
    lo, hi = model_at_one.edges(1, 0.0)
    assert abs(lo - 1.0) < 1e-3
    assert 0.0 < hi - lo < 1e-3


def test_first_branch_is_one_normal_form_step(model_at_one):
    """On ``S0`` the return map is ``rho N rho**-1``."""
    renormalization = model_at_one.renormalization
    series = model_at_one.geometry.series
    for point in [(0.0, 1.0), (0.3, 0.5), (0.05, 1.05)]:
        inside = renormalization.rho_inverse(point)
        expected = renormalization.rho(normal_apply(series, inside))
        image = model_at_one.branch(0, point)
        assert image == pytest.approx(expected, rel=1e-10, abs=1e-14)


def test_returns_along_stable_edge(model_at_one):
    """The stable edge stays in ``S0`` and falls into the saddle."""
    orbit = orbit_returns(model_at_one, (0.0, 1.0), returns=50)
    assert len(orbit) == 51
    assert all(model_at_one.locate(point) == 0 for point in orbit[:-1])
    assert math.hypot(*orbit[-1]) < 1e-10


def test_lift_outside_window(model_at_one):
    """Points far outside the square leave the working window."""
    with pytest.raises(WindowExitError):
        model_at_one.lift((1e200, 1.0))
    with pytest.raises(GeometryError):
        model_at_one.lift((math.inf, 1.0))


@pytest.mark.slow
def test_pipeline_at_one(run_config):
    """The full pipeline at ``h = 1``."""
    result = dimension_pipeline(1.0, 0.1, 1.0, run_config)
    assert result.n == 7
    assert result.class_report is not None
    assert any(1.0 / 400.0 <= k <= 4.0 for k in result.cones.passing)
    partition = result.partition
    side = partition.lam**0.1
    assert 1.0 < partition.x_s < side
    assert 1.0 < partition.y_u < side
    for tau_L, _ in (partition.stable_thickness, partition.unstable_thickness):
        assert 0.25 <= tau_L <= 4.0
    assert result.log_total < result.total <= 2.0
    assert result.to_dict()["geometry"]


@pytest.mark.slow
def test_dimension_grows_as_h_shrinks(run_config):
    """Smaller ``h`` gives a thicker horseshoe."""
    totals = [
        dimension_pipeline(h, 0.1, 1.0, run_config).total for h in (1.4, 1.1, 0.8)
    ]
    assert totals[0] < totals[1] < totals[2]


def test_renormalization_round_trip():
    """``rho**-1`` undoes ``rho`` through the solve for ``t(s)``."""
    from stochastic_sea.horseshoe import Renormalization
    from stochastic_sea.maps import RescaledParams
    from stochastic_sea.normalform import birkhoff_normalize

    _, series = birkhoff_normalize(RescaledParams.from_h(1.0), order=3)
    renormalization = Renormalization(series, 7)
    assert renormalization.t(0.0) == 0.0
    point = (1e-4, 2e-3)
    image = renormalization.rho(point)
    assert image[0] == pytest.approx(1e-4 * math.e**7, rel=1e-3)
    back = renormalization.rho_inverse(image)
    assert back == pytest.approx(point, rel=1e-10)
