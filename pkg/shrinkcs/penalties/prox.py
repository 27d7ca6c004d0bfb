# Copyright (c) The shrinkcs authors.
"""
Brute-force counterparts of the closed forms: a grid-search proximal oracle,
the inverse of a penalty, and the generic construction of a penalty from its
shrinkage through the Legendre-Fenchel transform. These are reference
implementations for tests and diagnostics, not for inner loops.
"""
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from shrinkcs.metainfo import Penalties
from shrinkcs.penalties.base import PenaltySpec, build_penalty
from shrinkcs.utils.checks import ConfigurationError, check_finite, check_positive

PROX_COARSE_POINTS = 4001
PROX_REFINE_POINTS = 2001
PROX_MIN_REFINEMENTS = 2
PROX_TARGET_PITCH = 1e-6


def prox_oracle(spec: PenaltySpec, x: float, step: float = 1.0) -> float:
    """Grid-search minimizer of `step * lam * g(w) + (w - x)^2 / 2`.

    A symmetric coarse grid on [-|x| - 1, |x| + 1] (containing 0) is refined
    twice, and further until the pitch is at most 1e-6, each time on ±2 pitches
    around the current best point. `lam * g(w) + w^2 / 2` is convex for every
    family, so the refinement window always contains the minimizer.

    Args:
        spec (PenaltySpec): penalty
        x (float): finite point
        step (float): prox step, the shrinkage of `spec` corresponds to step = 1

    Returns:
        float: the minimizer
    """
    x = float(check_finite(x, 'x'))
    step = check_positive(step, 'step')
    penalty = build_penalty(spec)
    weight = step * penalty.lam

    def objective(w: np.ndarray) -> np.ndarray:
        return weight * penalty.value(w) + 0.5 * (w - x) ** 2

    radius = abs(x) + 1.0
    grid = np.linspace(-radius, radius, PROX_COARSE_POINTS)
    best = grid[np.argmin(objective(grid))]
    pitch = grid[1] - grid[0]

    refinements = 0
    while refinements < PROX_MIN_REFINEMENTS or pitch > PROX_TARGET_PITCH:
        grid = np.linspace(best - 2.0 * pitch, best + 2.0 * pitch, PROX_REFINE_POINTS)
        best = grid[np.argmin(objective(grid))]
        pitch = grid[1] - grid[0]
        refinements += 1
    return float(best)


def penalty_supremum(spec: PenaltySpec) -> float:
    """sup_t g(t): μ/2 for firm, λ/2 for hard, λ(1/2 - 1/p) for p < 0, +inf otherwise."""
    if spec.family == Penalties.firm:
        return 0.5 * spec.mu
    if spec.family == Penalties.hard:
        return 0.5 * spec.lam
    if spec.family == Penalties.p_shrink and spec.p < 0:
        return spec.lam * (0.5 - 1.0 / spec.p)
    return np.inf


def penalty_inverse(spec: PenaltySpec, level: float) -> float:
    """The t >= 0 with g(t) = level (g is increasing up to its supremum).

    Raises:
        ConfigurationError: when `level` is not below the supremum of g
    """
    if level <= 0:
        return 0.0
    supremum = penalty_supremum(spec)
    if level >= supremum:
        raise ConfigurationError(
            f'{spec.describe()} is bounded by {supremum:g}, g(t) = {level:g} has no solution'
        )
    penalty = build_penalty(spec)

    def gap(t: float) -> float:
        return float(penalty.value(np.array([t]))[0]) - level

    hi = max(level, spec.lam)
    while gap(hi) < 0:
        hi *= 2.0
    return float(brentq(gap, 0.0, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500))


def legendre_penalty(
    shrink: Callable[[np.ndarray], np.ndarray],
    w,
    lam: float,
    x_max: Optional[float] = None,
    num: int = 200001,
) -> np.ndarray:
    """Construct the penalty of a shrinkage numerically: g(w) = (f*(|w|) - w^2 / 2) / λ.

    f is the antiderivative of the shrinkage on [0, x_max] (trapezoidal rule) and
    f*(w) = max_x (x w - f(x)) is taken over the same grid.

    Args:
        shrink: elementwise shrinkage, e.g. `lambda t: firm_threshold(t, 1, 2)`
        w: query points
        lam (float): λ used to normalize g
        x_max (float): integration range, default 2 max|w| + 4λ
        num (int): grid size

    Returns:
        np.ndarray: g evaluated at `w`
    """
    w = np.abs(check_finite(w, 'w'))
    lam = check_positive(lam, 'lambda')
    if x_max is None:
        x_max = 2.0 * float(np.max(w, initial=0.0)) + 4.0 * lam
    xs = np.linspace(0.0, x_max, num)
    s = shrink(xs)
    f = np.concatenate([[0.0], np.cumsum(0.5 * (s[1:] + s[:-1]) * np.diff(xs))])

    conj = np.array([np.max(xs * wi - f) for wi in w.reshape(-1)]).reshape(w.shape)
    return (conj - 0.5 * w**2) / lam
