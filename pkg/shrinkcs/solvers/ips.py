# Copyright (c) The shrinkcs authors.
"""
Iterative p-shrinkage: forward-backward splitting x ← S(x − Aᵀ(Ax − b)) for
F(x) = λG(x) + ½‖Ax − b‖². The unit gradient step requires ‖A‖ < 1; with it,
F is nonincreasing along the iterates for every shrinkage family.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from shrinkcs.metainfo import Penalties, Solvers
from shrinkcs.penalties import PenaltySpec, build_penalty
from shrinkcs.sensing import SensingProblem, operator_norm
from shrinkcs.solvers.base import (
    INIT_L1,
    INIT_ZERO,
    SOLVERS,
    Solver,
    SolverConfig,
    SolverResult,
    Termination,
    initial_point,
)
from shrinkcs.solvers.objective import (
    lambda_min_for_negative_p,
    objective_Fp,
    stationarity_residual,
)
from shrinkcs.utils.checks import ConfigurationError

logger = logging.getLogger(__name__)

RESCALE_MARGIN = 1e-3


def rescale_problem(problem: SensingProblem, sigma: float) -> Tuple[SensingProblem, float]:
    """Scale A and b by 1 / (σ(1 + 1e-3)) so that the scaled ‖A‖ < 1."""
    scale = 1.0 / (sigma * (1.0 + RESCALE_MARGIN))
    return SensingProblem(
        A=problem.A * scale, b=problem.b * scale, epsilon=problem.epsilon * scale
    ), scale


def ips_solve(
    problem: SensingProblem, spec: PenaltySpec, config: Optional[SolverConfig] = None
) -> SolverResult:
    """Minimize F(x) = λG(x) + ½‖Ax − b‖² by iterative shrinkage, λ = `spec.lam`.

    Args:
        problem (SensingProblem): needs ‖A‖ < 1 unless `config.rescale` is set
        spec (PenaltySpec): the shrinkage S, the proximal mapping of λG
        config (SolverConfig): iteration control; p < 0 requires `init='zero'`

    Returns:
        SolverResult: `scale` records the factor applied to A and b (1.0 if none),
            λ is understood to apply to the scaled problem
    """
    config = SolverConfig.from_config(config)
    if config.init == INIT_L1:
        raise ConfigurationError('init=l1 is only supported by the ADMM solver')

    sigma = operator_norm(problem.A)
    scale = 1.0
    if sigma >= 1.0:
        if not config.rescale:
            raise ConfigurationError(
                f'IPS needs ‖A‖ < 1, got ‖A‖ = {sigma:.6g}; rescale A or set rescale=True'
            )
        problem, scale = rescale_problem(problem, sigma)
        logger.info('Rescaled A and b by %.6g (‖A‖ was %.6g)', scale, sigma)

    lam = spec.lam
    if spec.family == Penalties.p_shrink and spec.p < 0:
        if config.init != INIT_ZERO:
            raise ConfigurationError(f'IPS with p = {spec.p:g} < 0 must start at x⁰ = 0')
        lam_min = lambda_min_for_negative_p(spec.p, problem.b)
        if lam <= lam_min:
            raise ConfigurationError(
                f'IPS with p = {spec.p:g} needs lambda > {lam_min:.12g} '
                f'(λ² > p‖b‖²/(p − 2)), got lambda = {lam:g}'
            )

    penalty = build_penalty(spec)
    A, b = problem.A, problem.b
    x = initial_point(problem, config)

    def objective(v: np.ndarray) -> float:
        return objective_Fp(problem, spec, lam, v)

    objectives: List[float] = [objective(x)] if config.objective_trace else []
    residuals: List[float] = [float(np.linalg.norm(A @ x - b))]
    steps: List[float] = []
    iterates = [x.copy()] if config.record_iterates else None

    logger.info(
        'IPS on a %dx%d problem with %s, ‖A‖ = %.6g',
        problem.m,
        problem.n,
        spec.describe(),
        sigma,
    )
    termination, iterations = Termination.max_iters, config.max_iters
    for it in range(1, config.max_iters + 1):
        x_new = penalty.shrink(x - A.T @ (A @ x - b))
        step = float(np.linalg.norm(x_new - x))

        if step == 0.0 or (
            it == 1
            and step <= config.step_tol
            and stationarity_residual(problem, spec, lam, x) <= config.stationarity_tol
        ):
            # x⁰ (or the current point) already solves the fixed-point equation
            termination, iterations = Termination.fixed_point, it - 1
            break

        x = x_new
        steps.append(step)
        residuals.append(float(np.linalg.norm(A @ x - b)))
        if config.objective_trace:
            objectives.append(objective(x))
        if iterates is not None:
            iterates.append(x.copy())
        logger.debug('IPS iter %d: step %.3e', it, step)

        if (
            step <= config.step_tol
            and stationarity_residual(problem, spec, lam, x) <= config.stationarity_tol
        ):
            termination, iterations = Termination.converged, it
            break

    residual = stationarity_residual(problem, spec, lam, x)
    logger.info(
        'IPS stopped: %s after %d iterations, stationarity residual %.3e',
        termination.value,
        iterations,
        residual,
    )
    return SolverResult(
        x_final=x,
        objective_trace=objectives,
        step_diffs=steps,
        stationarity_residual=residual,
        iterations=iterations,
        termination=termination,
        residual_trace=residuals,
        iterates=iterates,
        scale=scale,
        solver=Solvers.ips,
    )


@SOLVERS.register_module(module_name=Solvers.ips)
class IPSSolver(Solver):
    """Iterative shrinkage for the unconstrained objective."""

    def solve(self, problem: SensingProblem, spec: PenaltySpec) -> SolverResult:  # noqa: D102
        return ips_solve(problem, spec, self.config)
