# Copyright (c) The shrinkcs authors.
import math

import numpy as np

from shrinkcs.penalties import PenaltySpec, build_penalty, penalty_inverse
from shrinkcs.sensing import SensingProblem
from shrinkcs.utils.checks import ConfigurationError, check_finite, check_positive


def objective_Fp(  # noqa: N802
    problem: SensingProblem, spec: PenaltySpec, lambda_reg: float, x
) -> float:
    """F(x) = λ·G(x) + ½‖Ax − b‖², G the penalty induced by `spec`."""
    lambda_reg = check_positive(lambda_reg, 'lambda_reg')
    residual = problem.residual(x)
    penalty = build_penalty(spec).total(check_finite(x, 'x').reshape(-1))
    return lambda_reg * penalty + 0.5 * float(residual @ residual)


def stationarity_residual(
    problem: SensingProblem, spec: PenaltySpec, lambda_reg: float, x
) -> float:
    """Distance of x from first-order stationarity of F.

    For x_j ≠ 0 the residual is |λ·g'(x_j) + [Aᵀ(Ax − b)]_j|; for x_j = 0 it is
    max(0, |[Aᵀ(Ax − b)]_j| − λ), since ∂g(0) = [−1, 1]. The max over j is returned.
    """
    lambda_reg = check_positive(lambda_reg, 'lambda_reg')
    x = check_finite(x, 'x').reshape(-1)
    grad = problem.A.T @ problem.residual(x)
    nonzero = x != 0
    slope = build_penalty(spec).derivative(x)
    active = np.abs(lambda_reg * slope[nonzero] + grad[nonzero])
    inactive = np.maximum(np.abs(grad[~nonzero]) - lambda_reg, 0.0)
    return float(max(np.max(active, initial=0.0), np.max(inactive, initial=0.0)))


def equality_stationarity_residual(problem: SensingProblem, spec: PenaltySpec, w) -> float:
    """Stationarity of `min λG(w) s.t. Aw = b` at a feasible w.

    The multiplier ν is the least-squares solution of λ·g'(w_S) + A_Sᵀν = 0 on the
    support S; zero entries need |[Aᵀν]_j| <= λ.
    """
    w = check_finite(w, 'w').reshape(-1)
    lam = spec.lam
    support = np.flatnonzero(w)
    if support.size == 0:
        return 0.0
    slope = lam * build_penalty(spec).derivative(w[support])
    A_S = problem.A[:, support]
    nu = np.linalg.lstsq(A_S.T, -slope, rcond=None)[0]
    dual = problem.A.T @ nu
    active = np.abs(slope + dual[support])
    zeros = np.ones(problem.n, dtype=bool)
    zeros[support] = False
    inactive = np.maximum(np.abs(dual[zeros]) - lam, 0.0)
    return float(max(np.max(active, initial=0.0), np.max(inactive, initial=0.0)))


def lambda_min_for_negative_p(p: float, b) -> float:
    """sqrt(p‖b‖² / (p − 2)); IPS with p < 0 and x⁰ = 0 needs a strictly larger λ."""
    if not np.isfinite(p) or p >= 0:
        raise ConfigurationError(f'lambda_min_for_negative_p needs p < 0, got: {p}')
    b = check_finite(b, 'b').reshape(-1)
    return math.sqrt(p * float(b @ b) / (p - 2.0))


def boundedness_radius(spec: PenaltySpec, lambda_reg: float, b) -> float:
    """The t with g(t) = ‖b‖² / (2λ), which bounds ‖xⁿ‖_∞ along IPS started at 0."""
    b = check_finite(b, 'b').reshape(-1)
    return penalty_inverse(spec, float(b @ b) / (2.0 * check_positive(lambda_reg, 'lambda_reg')))
