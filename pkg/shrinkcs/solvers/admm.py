# Copyright (c) The shrinkcs authors.
"""
ADMM for the equality-constrained problem min G(w) s.t. Aw = b, split as w = z:

    w ← P(z − u)                 affine projection onto {Aw = b}
    z ← S_{λ/ρ}(w + u)           shrinkage with the threshold scaled by 1/ρ
    u ← u + w − z                scaled dual update

With orthonormal rows the projection is P(v) = v − Aᵀ(Av − b). For nonconvex
penalties this is a heuristic for the global problem: limits are feasible and
stationary, global optimality is only checked against the exhaustive oracle.
"""
import logging
from typing import List, Optional

import numpy as np

from shrinkcs.metainfo import Solvers
from shrinkcs.penalties import PenaltySpec, build_penalty, penalty_total
from shrinkcs.sensing import SensingProblem, has_orthonormal_rows
from shrinkcs.solvers.base import (
    INIT_L1,
    SOLVERS,
    Solver,
    SolverConfig,
    SolverResult,
    Termination,
    initial_point,
)
from shrinkcs.solvers.objective import equality_stationarity_residual
from shrinkcs.utils.checks import ConfigurationError

logger = logging.getLogger(__name__)


def project_affine(problem: SensingProblem, v: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto {w : Aw = b} for A with orthonormal rows."""
    return v - problem.A.T @ (problem.A @ v - problem.b)


def restore_feasibility(problem: SensingProblem, z: np.ndarray) -> np.ndarray:
    """Least-squares correction of z on its own support, so Az = b where A_S allows it.

    Zeros of z stay zero. With b in the range of A_S the result is feasible to
    rounding; otherwise the residual is the least-squares one on that support.
    """
    support = np.flatnonzero(z)
    if support.size == 0:
        return z
    delta, *_ = np.linalg.lstsq(problem.A[:, support], problem.b - problem.A @ z, rcond=None)
    w = z.copy()
    w[support] += delta
    return w


def _admm_loop(
    problem: SensingProblem,
    spec: PenaltySpec,
    config: SolverConfig,
    z: np.ndarray,
) -> SolverResult:
    rho = config.admm_rho
    shrink = build_penalty(spec.scale_threshold(1.0 / rho)).shrink
    u = np.zeros(problem.n)

    def objective(v: np.ndarray) -> float:
        return spec.lam * penalty_total(spec, v)

    objectives: List[float] = [objective(z)] if config.objective_trace else []
    residuals: List[float] = [float(np.linalg.norm(problem.residual(z)))]
    steps: List[float] = []
    iterates = [z.copy()] if config.record_iterates else None

    termination, iterations = Termination.max_iters, config.max_iters
    for it in range(1, config.max_iters + 1):
        w = project_affine(problem, z - u)
        z_new = shrink(w + u)
        u = u + w - z_new
        primal = float(np.linalg.norm(w - z_new))
        step = float(np.linalg.norm(z_new - z))
        dual = rho * step
        z = z_new

        if primal == 0.0 and dual == 0.0:
            termination, iterations = Termination.fixed_point, it - 1
            break

        steps.append(step)
        residuals.append(primal)
        if config.objective_trace:
            objectives.append(objective(z))
        if iterates is not None:
            iterates.append(z.copy())
        logger.debug('ADMM iter %d: primal %.3e, dual %.3e', it, primal, dual)

        if primal <= config.step_tol and dual <= config.step_tol:
            termination, iterations = Termination.converged, it
            break

    x_final = restore_feasibility(problem, z)
    return SolverResult(
        x_final=x_final,
        objective_trace=objectives,
        step_diffs=steps,
        stationarity_residual=equality_stationarity_residual(problem, spec, x_final),
        iterations=iterations,
        termination=termination,
        residual_trace=residuals,
        iterates=iterates,
        solver=Solvers.admm,
    )


def admm_equality_solve(
    problem: SensingProblem, spec: PenaltySpec, config: Optional[SolverConfig] = None
) -> SolverResult:
    """Solve min G(w) subject to Aw = b by ADMM.

    Args:
        problem (SensingProblem): A must have orthonormal rows (see `orthonormalize_rows`)
        spec (PenaltySpec): penalty G; the z-step uses `spec.scale_threshold(1 / ρ)`
        config (SolverConfig): `admm_rho`, stopping tolerances and the start point;
            `init='l1'` first runs the soft-threshold ADMM and starts from its solution

    Returns:
        SolverResult: `x_final` is the sparse iterate z corrected on its support by
            `restore_feasibility`, so Ax = b up to rounding once z has converged
    """
    config = SolverConfig.from_config(config)
    if not (problem.rows_orthonormal or has_orthonormal_rows(problem.A)):
        raise ConfigurationError(
            'ADMM needs a problem with orthonormal rows (AAᵀ = I), call orthonormalize_rows first'
        )

    if config.init == INIT_L1:
        warm = _admm_loop(problem, PenaltySpec.soft(spec.lam), config, np.zeros(problem.n))
        z = warm.x_final
        logger.info(
            'ADMM warm start from the l1 solution (%s after %d iterations)',
            warm.termination.value,
            warm.iterations,
        )
    else:
        z = initial_point(problem, config)

    logger.info('ADMM on a %dx%d problem with %s', problem.m, problem.n, spec.describe())
    result = _admm_loop(problem, spec, config, z)
    logger.info(
        'ADMM stopped: %s after %d iterations, ‖Aw − b‖ = %.3e',
        result.termination.value,
        result.iterations,
        float(np.linalg.norm(problem.residual(result.x_final))),
    )
    return result


@SOLVERS.register_module(module_name=Solvers.admm)
class ADMMSolver(Solver):
    """ADMM for the equality-constrained problem."""

    def solve(self, problem: SensingProblem, spec: PenaltySpec) -> SolverResult:  # noqa: D102
        return admm_equality_solve(problem, spec, self.config)
