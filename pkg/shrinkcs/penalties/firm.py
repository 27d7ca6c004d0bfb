# Copyright (c) The shrinkcs authors.
import numpy as np

from shrinkcs.metainfo import Penalties
from shrinkcs.penalties.base import PENALTIES, Penalty, PenaltyValue
from shrinkcs.utils.checks import ConfigurationError, check_finite, check_positive


def hard_threshold(x, lam: float) -> np.ndarray:
    """Keep x_i when |x_i| > λ, zero otherwise (the tie |x_i| = λ goes to zero).

    Args:
        x: real vector (or scalar)
        lam (float): threshold λ > 0

    Returns:
        np.ndarray: thresholded copy of `x`
    """
    x = check_finite(x, 'x')
    lam = check_positive(lam, 'lambda')
    return np.where(np.abs(x) > lam, x, 0.0)


def firm_threshold(x, lam: float, mu: float) -> np.ndarray:
    """Firm thresholding: zero below λ, ramp μ(|t| - λ)/(μ - λ) on [λ, μ], identity above μ.

    Args:
        x: real vector (or scalar)
        lam (float): lower threshold λ > 0
        mu (float): upper threshold μ > λ

    Returns:
        np.ndarray: shrunk copy of `x`
    """
    x = check_finite(x, 'x')
    lam = check_positive(lam, 'lambda')
    if not np.isfinite(mu) or mu <= lam:
        raise ConfigurationError(
            f'firm thresholding needs mu > lambda, got mu={mu}, lambda={lam}; '
            'use hard_threshold for mu == lambda'
        )
    t = np.abs(x)
    ramp = mu * (t - lam) / (mu - lam)
    out = np.where(t <= lam, 0.0, np.where(t <= mu, ramp, t))
    return np.sign(x) * out


def g_firm_values(w, mu: float) -> np.ndarray:
    """Vectorized g_firm(w) = |w| - w²/(2μ) capped at μ/2 for |w| >= μ."""
    t = np.abs(check_finite(w, 'w'))
    return np.where(t <= mu, t - t * t / (2.0 * mu), 0.5 * mu)


def g_firm_derivatives(w, mu: float) -> np.ndarray:
    """Vectorized signed g_firm'(w), zero at w = 0 and for |w| >= μ."""
    w = check_finite(w, 'w')
    return np.sign(w) * np.maximum(1.0 - np.abs(w) / mu, 0.0)


def g_firm_eval(w: float, lam: float, mu: float) -> PenaltyValue:
    """The penalty induced by firm thresholding, independent of λ.

    Args:
        w (float): query point
        lam (float): λ > 0, only validated
        mu (float): μ >= λ

    Returns:
        PenaltyValue: value and derivative g'(|w|) (None at 0)
    """
    w = float(check_finite(w, 'w'))
    lam = check_positive(lam, 'lambda')
    if not np.isfinite(mu) or mu < lam:
        raise ConfigurationError(f'g_firm needs mu >= lambda, got mu={mu}, lambda={lam}')
    value = float(g_firm_values(w, mu))
    derivative = max(1.0 - abs(w) / mu, 0.0) if w != 0 else None
    return PenaltyValue(value=value, derivative=derivative)


@PENALTIES.register_module(module_name=Penalties.firm)
class FirmPenalty(Penalty):
    """Firm thresholding and its quadratic-capped penalty."""

    def shrink(self, x: np.ndarray) -> np.ndarray:  # noqa: D102
        if self.spec.mu == self.lam:
            return hard_threshold(x, self.lam)
        return firm_threshold(x, self.lam, self.spec.mu)

    def value(self, w: np.ndarray) -> np.ndarray:  # noqa: D102
        return g_firm_values(w, self.spec.mu)

    def derivative(self, w: np.ndarray) -> np.ndarray:  # noqa: D102
        return g_firm_derivatives(w, self.spec.mu)


@PENALTIES.register_module(module_name=Penalties.hard)
class HardPenalty(Penalty):
    """Hard thresholding, whose penalty is g_firm with μ = λ."""

    def shrink(self, x: np.ndarray) -> np.ndarray:  # noqa: D102
        return hard_threshold(x, self.lam)

    def value(self, w: np.ndarray) -> np.ndarray:  # noqa: D102
        return g_firm_values(w, self.lam)

    def derivative(self, w: np.ndarray) -> np.ndarray:  # noqa: D102
        return g_firm_derivatives(w, self.lam)
