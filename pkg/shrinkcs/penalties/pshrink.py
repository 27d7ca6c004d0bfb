# Copyright (c) The shrinkcs authors.
"""
p-shrinkage s_p(t) = max{t - λ^{2-p} t^{p-1}, 0} and its induced penalty g_p.

g_p has no closed form. With x = x(w) the point mapped to |w| by the shrinkage,
i.e. the root of x - λ^{2-p} x^{p-1} = |w|, and u = x / λ,

    g_p(w) = λ/p u^p - λ/2 u^(2p-2) - λ(1/p - 1/2)     (p != 0)
    g_0(w) = λ log x - λ/2 u^(-2) - λ(log λ - 1/2)
    g_p'(w) = u^(p-1) = (λ / x)^(1-p)

Everything is evaluated in units of λ (u and v = |w| / λ), and powers are
taken as exp(e log u) with u >= 1, so very negative p never overflows.
"""
import logging

import numpy as np

from shrinkcs.metainfo import Penalties
from shrinkcs.penalties.base import PENALTIES, Penalty, PenaltyValue
from shrinkcs.penalties.soft import soft_threshold
from shrinkcs.utils.checks import (
    ConfigurationError,
    InvalidInputError,
    NumericalError,
    check_finite,
    check_positive,
)

logger = logging.getLogger(__name__)

MAX_ROOT_ITERS = 200
_ROOT_RTOL = 4.0 * np.finfo(np.float64).eps


def _check_p(p: float, upper: float = 1.0) -> float:
    if not np.isfinite(p) or p >= upper:
        raise ConfigurationError(f'p must be finite and < {upper:g}, got: {p}')
    return float(p)


def _power(u: np.ndarray, exponent: float) -> np.ndarray:
    """u ** exponent for u >= 1 without overflow."""
    return np.exp(exponent * np.log(u))


def p_shrink(x, lam: float, p: float) -> np.ndarray:
    """The p-shrinkage mapping, applied elementwise with odd extension.

    Args:
        x: real vector (or scalar)
        lam (float): threshold λ > 0, s_p(t) = 0 iff |t| <= λ
        p (float): exponent, p < 2 (p = 1 is soft thresholding)

    Returns:
        np.ndarray: shrunk copy of `x`
    """
    x = check_finite(x, 'x')
    lam = check_positive(lam, 'lambda')
    p = _check_p(p, upper=2.0)
    if p == 1.0:
        return soft_threshold(x, lam)

    t = np.abs(x)
    out = np.zeros_like(t)
    above = t > lam
    ta = t[above]
    # λ^{2-p} t^{p-1} = λ (t/λ)^{p-1}
    out[above] = np.maximum(ta - lam * _power(ta / lam, p - 1.0), 0.0)
    return np.sign(x) * out


def unit_root(v, p: float) -> np.ndarray:
    """Solve u - u^(p-1) = v for u >= 1, elementwise over v >= 0 (p < 1).

    h(u) = u - u^(p-1) - v is increasing and concave on [1, inf) and the root lies in
    [max(1, v), v + max(1, v)^(p-1)]. Newton's method started at the left end
    increases monotonically to the root; a step leaving the bracket is replaced by
    bisection. The result has the shape of `v` (0-d for scalars).
    """
    shape = np.shape(v)
    v = np.asarray(v, dtype=np.float64).ravel()
    lo = np.maximum(1.0, v)
    hi = v + _power(lo, p - 1.0)
    u = lo.copy()
    active = np.ones(v.shape, dtype=bool)

    for _ in range(MAX_ROOT_ITERS):
        if not active.any():
            return u.reshape(shape)
        ua, va = u[active], v[active]
        pw = _power(ua, p - 1.0)
        h = ua - pw - va
        lo_a = np.where(h <= 0, ua, lo[active])
        hi_a = np.where(h >= 0, ua, hi[active])
        new = ua - h / (1.0 + (1.0 - p) * pw / ua)
        outside = (new < lo_a) | (new > hi_a)
        new = np.where(outside, 0.5 * (lo_a + hi_a), new)
        done = (h == 0) | (np.abs(new - ua) <= _ROOT_RTOL * ua)

        u[active] = np.where(h == 0, ua, new)
        lo[active], hi[active] = lo_a, hi_a
        active[np.flatnonzero(active)[done]] = False

    if active.any():
        raise NumericalError(
            f'p-shrinkage root solver did not converge in {MAX_ROOT_ITERS} iterations '
            f'(p={p}, {int(active.sum())} entries left)'
        )
    return u.reshape(shape)


def solve_x_of_w(w, lam: float, p: float):
    """The unique x > λ with x - λ^{2-p} x^{p-1} = w, i.e. s_p(x) = w.

    Args:
        w: positive real (scalar or array)
        lam (float): λ > 0
        p (float): p <= 1

    Returns:
        x with x > max(λ, w); a float for scalar input
    """
    w_arr = check_finite(w, 'w')
    lam = check_positive(lam, 'lambda')
    if np.any(w_arr <= 0):
        raise InvalidInputError(f'w must be positive, got: {w}')
    if p == 1.0:
        x = w_arr + lam
    else:
        x = lam * unit_root(w_arr / lam, _check_p(p))
    return float(x) if x.ndim == 0 else x


def _g_from_log(log_u: np.ndarray, lam: float, p: float) -> np.ndarray:
    # expm1 keeps g accurate for small |w| where u -> 1
    if p == 0.0:
        return lam * (log_u - 0.5 * np.expm1(-2.0 * log_u))
    return lam * (np.expm1(p * log_u) / p - 0.5 * np.expm1((2.0 * p - 2.0) * log_u))


def g_p_values(w, lam: float, p: float) -> np.ndarray:
    """Vectorized g_p(w), even in w with g_p(0) = 0."""
    w = check_finite(w, 'w')
    if p == 1.0:
        return np.abs(w)
    u = unit_root(np.abs(w) / lam, p)
    return _g_from_log(np.log(u), lam, p)


def g_p_derivatives(w, lam: float, p: float) -> np.ndarray:
    """Vectorized signed g_p'(w) = sign(w) (λ / x(|w|))^(1-p), zero where w = 0."""
    w = check_finite(w, 'w')
    if p == 1.0:
        return np.sign(w).astype(np.float64)
    u = unit_root(np.abs(w) / lam, p)
    return np.sign(w) * _power(u, p - 1.0)


def g_p_eval(w: float, lam: float, p: float) -> PenaltyValue:
    """Evaluate the penalty induced by p-shrinkage at a point.

    Args:
        w (float): query point
        lam (float): λ > 0
        p (float): p <= 1

    Returns:
        PenaltyValue: value, derivative g'(|w|) (None at 0) and root x(|w|)
    """
    w = float(check_finite(w, 'w'))
    lam = check_positive(lam, 'lambda')
    p = float(p) if p == 1.0 else _check_p(p)
    if p == 1.0:
        return PenaltyValue(
            value=abs(w), derivative=1.0 if w != 0 else None, root_x=abs(w) + lam
        )
    u = float(unit_root(abs(w) / lam, p))
    value = float(_g_from_log(np.log(u), lam, p))
    derivative = float(_power(u, p - 1.0)) if w != 0 else None
    return PenaltyValue(value=value, derivative=derivative, root_x=lam * u)


def g_p_deriv(w: float, lam: float, p: float) -> float:
    """g_p'(|w|) = (λ / x(|w|))^(1-p), in (0, 1] and decreasing in |w|.

    Raises:
        InvalidInputError: at w = 0, where the subdifferential is [-1, 1]
    """
    if float(w) == 0.0:
        raise InvalidInputError('g_p is not differentiable at 0 (subdifferential is [-1, 1])')
    return g_p_eval(w, lam, p).derivative


@PENALTIES.register_module(module_name=Penalties.p_shrink)
class PShrinkPenalty(Penalty):
    """The p-shrinkage family; p = 1 coincides with soft thresholding."""

    def shrink(self, x: np.ndarray) -> np.ndarray:  # noqa: D102
        return p_shrink(x, self.lam, self.spec.p)

    def value(self, w: np.ndarray) -> np.ndarray:  # noqa: D102
        return g_p_values(w, self.lam, self.spec.p)

    def derivative(self, w: np.ndarray) -> np.ndarray:  # noqa: D102
        return g_p_derivatives(w, self.lam, self.spec.p)
