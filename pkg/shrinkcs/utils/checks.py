# Copyright (c) The shrinkcs authors.
"""
Functions and exceptions for checking that
shrinkcs objects are configured and fed correctly.
"""
from typing import Any, Tuple, Union

import numpy as np


class ShrinkCSError(Exception):
    """
    Base class of every exception raised on purpose by shrinkcs.
    """

    def __reduce__(self) -> Union[str, Tuple[Any, ...]]:
        return type(self), (self.message,)

    def __init__(self, message: str):
        super().__init__()
        self.message = message

    def __str__(self):
        return self.message


# Copyright (c) AI2 AllenNLP. Licensed under the Apache License, Version 2.0.
class ConfigurationError(ShrinkCSError):
    """
    The exception raised by any shrinkcs object when it's misconfigured
    (e.g. invalid penalty parameters, inconsistent solver settings, bad config files).
    """


class InvalidInputError(ShrinkCSError):
    """
    Raised when numeric input is non-finite or has the wrong shape.
    """


class NumericalError(ShrinkCSError):
    """
    Raised when an iterative numerical routine fails to converge.
    """


class BudgetExceededError(ShrinkCSError):
    """
    Raised when an exhaustive enumeration would exceed its combinatorial budget.
    """


class CertificateError(ShrinkCSError):
    """
    Raised when a recovery or stability certificate cannot be issued
    because one of its preconditions does not hold.
    """


def check_finite(x, name: str = 'input') -> np.ndarray:
    """Convert `x` to a float array and reject NaN/Inf entries.

    Args:
        x: scalar or array-like
        name (str): name used in the error message

    Returns:
        np.ndarray: float64 copy of `x`
    """
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f'{name} must be finite, got non-finite entries.')
    return arr


def check_positive(value: float, name: str) -> float:  # noqa: D103
    if not np.isfinite(value) or value <= 0:
        raise ConfigurationError(f'{name} must be positive, got: {value}')
    return float(value)
