# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Tests for the shared helpers and the working precision."""

import math

import mpmath
import numpy as np
import pytest

from stochastic_sea.errors import ConvergenceError, DomainError, InputError
from stochastic_sea.precision import WorkingPrecision
from stochastic_sea.utils import (
    acute_angle,
    chebyshev_lobatto,
    convert_to_list,
    parallel_map,
    parse_float_list,
)


def test_parse_float_list():
    """Plain numbers, comma lists and ranges."""
    assert parse_float_list(["1", "0.5,0.25"]) == [1.0, 0.5, 0.25]
    expected = list(np.linspace(0.7, 1.4, 8))
    assert parse_float_list(["0.7:1.4:8"]) == pytest.approx(expected)
    with pytest.raises(InputError):
        parse_float_list(["one"])
    with pytest.raises(InputError):
        parse_float_list(["1:2"])


def test_convert_to_list():
    """Click tuples become lists."""
    assert convert_to_list(None, None, ("1", "2")) == ["1", "2"]
    assert convert_to_list(None, None, None) == []


def test_chebyshev_lobatto_nested():
    """Doubling the intervals keeps the old nodes."""
    coarse = chebyshev_lobatto(5, 0.0, 2.0)
    fine = chebyshev_lobatto(9, 0.0, 2.0)
    assert coarse[0] == pytest.approx(0.0) and coarse[-1] == pytest.approx(2.0)
    assert np.all(np.diff(fine) > 0)
    assert np.allclose(fine[::2], coarse)


def test_acute_angle():
    """Angles between lines, not vectors."""
    assert acute_angle((1.0, 0.0), (-1.0, 1.0)) == pytest.approx(math.pi / 4)
    assert acute_angle((1.0, 0.0), (-2.0, 0.0)) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        acute_angle((0.0, 0.0), (1.0, 0.0))


@pytest.mark.parametrize("jobs", [1, 2])
def test_parallel_map_keeps_order(jobs):
    """Results come back in input order."""
    assert parallel_map(math.sqrt, [4.0, 9.0, 16.0], jobs) == [2.0, 3.0, 4.0]


def test_double_precision():
    """Double precision works on floats."""
    prec = WorkingPrecision()
    assert not prec.extended
    assert prec.epsilon == 2.0**-52
    assert isinstance(prec.num(1), float)
    root = prec.find_root(lambda x: x * x - 2.0, 0.0, 2.0)
    assert root == pytest.approx(math.sqrt(2.0))
    assert prec.integrate(math.sin, 0.0, math.pi) == pytest.approx(2.0, abs=1e-14)
    with pytest.raises(DomainError):
        WorkingPrecision(24)


def test_extended_precision():
    """Wider significands go through mpmath inside the context."""
    prec = WorkingPrecision(128)
    assert prec.extended
    with prec.context():
        assert mpmath.mp.prec == 128
        root = prec.find_root(lambda x: x * x - 2, prec.num(1), prec.num(2))
        assert abs(root - mpmath.sqrt(2)) < mpmath.mpf(2) ** -120
    assert mpmath.mp.prec == 53


def test_unbracketed_root():
    """A root that is not bracketed is a stage error."""
    with pytest.raises(ConvergenceError):
        WorkingPrecision().find_root(lambda x: x * x + 1.0, -1.0, 1.0)
