# Copyright (c) The shrinkcs authors.
"""
A heuristic global oracle for min G(w) subject to ‖Aw − b‖ <= ε.

The minimizer is searched among vectors supported on at most m columns. On a
support S with A_S = UΣVᵀ, the feasible set is the ellipsoid
w_S = w_ls + VΣ⁻¹y with ‖y‖ <= r, r² = ε² − ‖A_S w_ls − b‖², so projecting onto
it is a rescaling of y. G is minimized by projected gradient descent with
backtracking from y = 0 (the least-squares point) and seeded random starts.
This gives a feasible point with small G, not a proof of global optimality.
"""
import itertools
import logging
import math
from typing import Optional, Tuple

import numpy as np

from shrinkcs.penalties import PenaltySpec, build_penalty
from shrinkcs.sensing import SensingProblem
from shrinkcs.sensing.linalg import ENUMERATION_BUDGET
from shrinkcs.utils.checks import BudgetExceededError, ConfigurationError, check_positive
from shrinkcs.utils.common_utils import make_rng

logger = logging.getLogger(__name__)

ORACLE_STARTS = 8
DESCENT_MAX_ITERS = 200
DESCENT_TOL = 1e-10
ARMIJO_C = 1e-4
MIN_STEP = 1e-12


def _project_ball(y: np.ndarray, radius: float) -> np.ndarray:
    norm = float(np.linalg.norm(y))
    return y if norm <= radius else y * (radius / norm)


def _descend(objective, gradient, y: np.ndarray, radius: float) -> Tuple[np.ndarray, float]:
    """Projected gradient descent on the ball ‖y‖ <= radius with backtracking."""
    value = objective(y)
    step = max(radius, 1.0)
    for _ in range(DESCENT_MAX_ITERS):
        grad = gradient(y)
        while True:
            candidate = _project_ball(y - step * grad, radius)
            moved = candidate - y
            new_value = objective(candidate)
            if new_value <= value - ARMIJO_C / step * float(moved @ moved) or step < MIN_STEP:
                break
            step *= 0.5
        if step < MIN_STEP or new_value > value:
            break
        y, value = candidate, new_value
        if float(np.linalg.norm(moved)) <= DESCENT_TOL * (1.0 + radius):
            break
        step *= 2.0
    return y, value


def noisy_global_oracle(
    spec: PenaltySpec,
    problem: SensingProblem,
    seed: int = 0,
    starts: int = ORACLE_STARTS,
    budget: int = ENUMERATION_BUDGET,
    max_support: Optional[int] = None,
) -> np.ndarray:
    """Best feasible vector found over all supports of size <= m.

    Args:
        spec (PenaltySpec): the penalty G
        problem (SensingProblem): noisy problem, ε = `problem.epsilon` > 0
        seed (int): seed of the random starts
        starts (int): random starts per support on top of the least-squares start
        budget (int): maximal number of supports searched
        max_support (int): largest support size, defaults to m

    Returns:
        np.ndarray: the feasible w with the smallest G found
    """
    spec = PenaltySpec.from_config(spec)
    epsilon = check_positive(problem.epsilon, 'epsilon')
    m, n = problem.shape
    max_support = m if max_support is None else int(max_support)
    if not 0 <= max_support <= m:
        raise ConfigurationError(f'max_support must lie in [0, {m}], got: {max_support}')
    total = sum(math.comb(n, j) for j in range(max_support + 1))
    if total > budget:
        raise BudgetExceededError(
            f'{total} supports of size <= {max_support} exceed the oracle budget of {budget}'
        )
    logger.warning_once(
        'noisy_global_oracle is a multistart local search, its minimum is not certified'
    )

    penalty = build_penalty(spec)
    rng = make_rng(seed)
    A, b = problem.A, problem.b
    best_w, best_value = None, math.inf

    if float(np.linalg.norm(b)) <= epsilon:
        return np.zeros(n)

    for size in range(1, max_support + 1):
        for support in itertools.combinations(range(n), size):
            cols = list(support)
            A_S = A[:, cols]
            u, s, vt = np.linalg.svd(A_S, full_matrices=False)
            w_ls = vt.T @ ((u.T @ b) / s)
            slack = epsilon**2 - float(np.sum((A_S @ w_ls - b) ** 2))
            if slack < 0:
                continue
            radius = math.sqrt(slack)
            basis = vt.T / s

            def objective(y, basis=basis, w_ls=w_ls):
                return penalty.total(w_ls + basis @ y)

            def gradient(y, basis=basis, w_ls=w_ls):
                return basis.T @ penalty.derivative(w_ls + basis @ y)

            inits = [np.zeros(size)]
            for _ in range(starts):
                direction = rng.standard_normal(size)
                direction /= max(float(np.linalg.norm(direction)), 1e-300)
                inits.append(direction * radius * rng.random() ** (1.0 / size))
            for y0 in inits:
                y, value = _descend(objective, gradient, y0, radius)
                if value < best_value:
                    best_value = value
                    best_w = np.zeros(n)
                    best_w[cols] = w_ls + basis @ y

    if best_w is None:
        raise ConfigurationError(
            f'no support of size <= {max_support} meets ‖A_S w − b‖ <= {epsilon:g}'
        )
    logger.debug('noisy oracle: G=%.6g on support %s', best_value, np.flatnonzero(best_w))
    return best_w
