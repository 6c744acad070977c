# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Working precision.

Double precision uses numpy and scipy. Wider significands go through
mpmath, whose working precision is set with :meth:`WorkingPrecision.context`.
Code written against a :class:`WorkingPrecision` only uses ``+``, ``-``,
``*``, ``/`` on scalars and the helper functions defined here, so it runs
unchanged in both modes.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import mpmath
import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError

DOUBLE_BITS = 53


@dataclass(frozen=True)
class WorkingPrecision:
    """Arithmetic backend for a significand width."""

    bits: int = DOUBLE_BITS

    def __post_init__(self):
        """Reject widths narrower than double."""
        if self.bits < DOUBLE_BITS:
            raise DomainError(f"Precision must be at least {DOUBLE_BITS} bits")

    @property
    def extended(self) -> bool:
        """Whether mpmath numbers are used."""
        return self.bits > DOUBLE_BITS

    @property
    def epsilon(self) -> float:
        """Unit roundoff."""
        return 2.0 ** (1 - self.bits)

    @contextmanager
    def context(self) -> Iterator[WorkingPrecision]:
        """Set the mpmath working precision for the enclosed block."""
        if self.extended:
            with mpmath.workprec(self.bits):
                yield self
        else:
            yield self

    def num(self, value):
        """Convert a number to the working type."""
        return mpmath.mpf(value) if self.extended else float(value)

    @property
    def pi(self):
        """The constant pi."""
        return +mpmath.pi if self.extended else math.pi

    def sqrt(self, x):
        """Square root."""
        return mpmath.sqrt(x) if self.extended else math.sqrt(x)

    def exp(self, x):
        """Exponential."""
        return mpmath.exp(x) if self.extended else math.exp(x)

    def log(self, x):
        """Natural logarithm."""
        return mpmath.log(x) if self.extended else math.log(x)

    def sin(self, x):
        """Sine."""
        return mpmath.sin(x) if self.extended else math.sin(x)

    def cos(self, x):
        """Cosine."""
        return mpmath.cos(x) if self.extended else math.cos(x)

    def fsum(self, values: Iterable):
        """Accurate sum."""
        return mpmath.fsum(values) if self.extended else math.fsum(values)

    def find_root(self, func: Callable, lo, hi):
        """Find a root of ``func`` bracketed by ``[lo, hi]``."""
        f_lo, f_hi = func(lo), func(hi)
        if f_lo == 0:
            return lo
        if f_hi == 0:
            return hi
        if (f_lo > 0) == (f_hi > 0):
            raise ConvergenceError(
                f"Root is not bracketed by [{float(lo)}, {float(hi)}]",
                stage="root",
                trace=[float(f_lo), float(f_hi)],
            )
        if self.extended:
            return mpmath.findroot(func, (lo, hi), solver="anderson")
        return brentq(func, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)

    def integrate(self, func: Callable, lo, hi, nodes: int = 48):
        """Integrate a smooth function over ``[lo, hi]``.

        Double precision uses a fixed Gauss-Legendre rule, extended precision
        the adaptive mpmath quadrature.
        """
        if self.extended:
            return mpmath.quad(func, [lo, hi])
        x, w = np.polynomial.legendre.leggauss(nodes)
        half, mid = (hi - lo) / 2.0, (hi + lo) / 2.0
        return half * math.fsum(wi * func(mid + half * xi) for xi, wi in zip(x, w))

    def to_float(self, value) -> float:
        """Convert a working number to a Python float."""
        return float(value)
