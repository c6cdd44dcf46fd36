# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 OIM-Stability contributors.
#
# OIM-Stability is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.


"""Errors for the OIM toolkit."""

EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_VERIFICATION = 4


class OimError(Exception):
    """Base class for OIM errors."""

    exit_code = EXIT_INPUT


class InputError(OimError):
    """Error thrown when an input artifact cannot be used."""


class GraphFormatError(InputError):
    """Error thrown when a graph file cannot be parsed."""

    def __init__(self, message, line=None):
        """Constructor."""
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphValidationError(InputError):
    """Error thrown when a graph violates its invariants."""


class ParameterError(OimError, ValueError):
    """Error thrown when a parameter is out of range."""

    exit_code = EXIT_USAGE


class DimensionMismatchError(OimError, ValueError):
    """Error thrown when array dimensions do not agree."""

    exit_code = EXIT_USAGE


class EnumerationLimitError(OimError):
    """Error thrown when an exhaustive sweep exceeds the node cap."""


class NumericalError(OimError):
    """Base class for numerical failures."""

    exit_code = EXIT_NUMERICAL


class EigenSolverError(NumericalError):
    """Error thrown when an eigenvalue problem cannot be solved."""


class IntegrationError(NumericalError):
    """Error thrown when time integration produces a non-finite state.

    The partial trajectory recorded up to the failure is kept in
    ``trajectory`` for diagnosis.
    """

    def __init__(self, message, step=None, trajectory=None):
        """Constructor."""
        self.step = step
        self.trajectory = trajectory
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)


class VerificationError(OimError):
    """Error thrown when an oracle check fails.

    ``results`` holds every check outcome of the failing run.
    """

    exit_code = EXIT_VERIFICATION

    def __init__(self, message, results=()):
        """Constructor."""
        self.results = list(results)
        super().__init__(message)


class ReportError(OimError):
    """Error thrown when a report cannot be written or read."""
