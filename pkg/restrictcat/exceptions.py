"""
Custom exceptions for restrictcat.

This module defines the exception hierarchy for the package. Law failures are
never raised: they are collected as violations in a CheckReport. Exceptions
are reserved for bad input and for broken internal invariants.
"""
from typing import Dict, Optional


class WorkbenchError(Exception):
    """Base exception for all restrictcat errors.

    Attributes:
        message: Explanation of the error
    """

    pass


class InputError(WorkbenchError):
    """Exception raised for malformed or inconsistent input.

    This covers duplicate or dangling ids, unknown objects and morphisms,
    ill-typed restriction assignments, unknown file keys and maps that are
    not natural.

    Attributes:
        message: Explanation of the input problem
    """

    pass


class PreconditionError(InputError):
    """Exception raised when a documented precondition does not hold.

    Attributes:
        message: Explanation of the failed precondition
        witness: Ids that demonstrate the failure (e.g. a non-split idempotent)
    """

    def __init__(self, message: str, witness: Optional[Dict[str, str]] = None):
        """Initialize a new PreconditionError.

        Args:
            message: Explanation of the failed precondition
            witness: Optional mapping of names to offending ids
        """
        super().__init__(message)
        self.witness = dict(witness or {})


class InvariantViolation(WorkbenchError):
    """Exception raised when a theorem-level assertion fails.

    A valid input can never trigger this; it means a construction or a
    search in the package is wrong.

    Attributes:
        message: Explanation of the broken invariant
        witness: Ids that demonstrate the failure
    """

    def __init__(self, message: str, witness: Optional[Dict[str, str]] = None):
        super().__init__(message)
        self.witness = dict(witness or {})


class ConfigurationError(WorkbenchError):
    """Exception raised for configuration-related errors.

    Attributes:
        message: Explanation of the configuration error
    """

    pass
