# Copyright (c) The shrinkcs authors.
import numpy as np

from shrinkcs.metainfo import Penalties
from shrinkcs.penalties.base import PENALTIES, Penalty
from shrinkcs.utils.checks import check_finite, check_positive


def soft_threshold(x, lam: float) -> np.ndarray:
    """max{|x_i| - λ, 0} sign(x_i), the proximal mapping of λ‖·‖₁.

    Args:
        x: real vector (or scalar)
        lam (float): threshold λ > 0

    Returns:
        np.ndarray: shrunk copy of `x`
    """
    x = check_finite(x, 'x')
    lam = check_positive(lam, 'lambda')
    return np.sign(x) * np.maximum(np.abs(x) - lam, 0.0)


@PENALTIES.register_module(module_name=Penalties.soft)
class SoftPenalty(Penalty):
    """g(w) = |w|, the ℓ1 penalty."""

    def shrink(self, x: np.ndarray) -> np.ndarray:  # noqa: D102
        return soft_threshold(x, self.lam)

    def value(self, w: np.ndarray) -> np.ndarray:  # noqa: D102
        return np.abs(w)

    def derivative(self, w: np.ndarray) -> np.ndarray:  # noqa: D102
        return np.sign(w).astype(np.float64)
