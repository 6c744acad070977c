# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Exception hierarchy with command-line exit codes.

Every error raised on purpose by the library derives from
:class:`StochasticSeaError`. The command line maps ``exit_code`` of the
caught exception to the process exit status, so the class decides the
status:

* ``2`` input errors (bad configuration, invalid Cantor systems, domain),
* ``3`` precision refusals,
* ``4`` pipeline stage failures,
* ``5`` scan budget exhaustion.
"""

from __future__ import annotations

from typing import Optional, Sequence


class StochasticSeaError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InputError(StochasticSeaError, ValueError):
    """Invalid user input."""

    exit_code = 2


class ConfigError(InputError):
    """Unknown or malformed configuration entry."""


class DomainError(InputError):
    """Argument outside the mathematical domain of an operation."""


class SystemValidationError(InputError):
    """A two-branch system is not dynamically defined."""


class DegenerateGapError(InputError):
    """A gap is too short to yield a meaningful thickness ratio."""


class PrecisionError(StochasticSeaError):
    """Working precision cannot support the requested computation."""

    exit_code = 3


class PrecisionRefusal(PrecisionError):
    """Parameter lies outside the supported precision window."""


class InsufficientPrecision(PrecisionError):
    """Measured accuracy is too coarse for the expected signal."""

    def __init__(self, message: str, required_bits: int):
        """Store the significand width that would be needed."""
        super().__init__(f"{message} (requires at least {required_bits} bits)")
        self.required_bits = required_bits


class UnderflowError(PrecisionError):
    """A quantity underflows the working floating-point format."""

    def __init__(self, message: str, log_value: float):
        """Store the natural logarithm of the underflowing value."""
        super().__init__(message)
        self.log_value = log_value


class StageError(StochasticSeaError):
    """A pipeline stage failed."""

    exit_code = 4
    default_stage = "pipeline"

    def __init__(self, message: str, stage: Optional[str] = None):
        """Tag the message with the stage name."""
        self.stage = stage or self.default_stage
        super().__init__(f"[{self.stage}] {message}")


class IntegrationError(StageError):
    """The flow integrator failed."""

    default_stage = "integrate"


class NormalFormError(StageError):
    """The normal form computation failed."""

    default_stage = "normalform"


class GeometryError(StageError):
    """Return map geometry could not be built."""

    default_stage = "geometry"


class WindowExitError(GeometryError):
    """An orbit left the working window."""


class ConvergenceError(StageError):
    """An iterative solver did not converge."""

    default_stage = "newton"

    def __init__(
        self,
        message: str,
        stage: Optional[str] = None,
        trace: Sequence[float] = (),
    ):
        """Keep the residual history of the failed iteration."""
        super().__init__(message, stage)
        self.trace = list(trace)


class ScanBudgetExhausted(StochasticSeaError):
    """Too many tangency-scan intervals stayed undecided."""

    exit_code = 5
