# Copyright (c) The shrinkcs authors.
"""
Exact-recovery certificates for min G(w) subject to Aw = b.

For A with the unique representation property, every feasible vector with at
most m nonzeros is a basic solution. With α (β) the smallest (largest) nonzero
magnitude over all basic solutions, a k-sparse feasible x is the global
minimizer as soon as 2k <= m and k·g(2β) < (m + 1 − k)·g(α).
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from shrinkcs.metainfo import Penalties
from shrinkcs.penalties import PenaltySpec, penalty_values
from shrinkcs.sensing import (
    SensingProblem,
    basic_solution_matrix,
    enumerate_basic_solutions,
)
from shrinkcs.sensing.linalg import ENUMERATION_BUDGET
from shrinkcs.utils.checks import (
    CertificateError,
    ConfigurationError,
    InvalidInputError,
    check_finite,
)

logger = logging.getLogger(__name__)

CERTIFICATE_MARGIN = 1e-12
FEASIBILITY_RTOL = 1e-8

P_GRID = tuple(2.0**-i for i in range(1, 21))
NEGATIVE_P = -1.0
NEGATIVE_P_LAMBDA_GRID = tuple(2.0**-i for i in range(1, 41))


@dataclass
class RecoveryCertificate:
    """
    Outcome of the exact-recovery inequality k·g(2β) < (m + 1 − k)·g(α).

    Args:
        alpha (float): smallest nonzero magnitude over the basic solutions
        beta (float): largest nonzero magnitude over the basic solutions
        k (int): sparsity of the vector to recover
        m (int): number of measurements
        lhs (float): k·g(2β)
        rhs (float): (m + 1 − k)·g(α)
        passes (bool): 2k <= m and lhs < rhs (up to a relative margin of 1e-12)
        spec (PenaltySpec): the penalty the inequality was evaluated for
        mu_max (float): firm parameter bound, when it was computed
        found_params (tuple): (p, λ) from the parameter search, when it was run
    """

    alpha: float
    beta: float
    k: int
    m: int
    lhs: float
    rhs: float
    passes: bool
    spec: Optional[PenaltySpec] = None
    mu_max: Optional[float] = None
    found_params: Optional[Tuple[float, float]] = None

    @property
    def ratio(self) -> float:
        """lhs / rhs, below 1 when the inequality holds."""
        return self.lhs / self.rhs if self.rhs > 0 else math.inf

    def to_dict(self) -> Dict[str, Any]:  # noqa: D102
        return {
            'alpha': self.alpha,
            'beta': self.beta,
            'k': self.k,
            'm': self.m,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'passes': self.passes,
            'penalty': None if self.spec is None else self.spec.to_dict(),
            'mu_max': self.mu_max,
            'found_params': None if self.found_params is None else list(self.found_params),
        }


def alpha_beta(problem: SensingProblem, budget: int = ENUMERATION_BUDGET) -> Tuple[float, float]:
    """Smallest and largest nonzero magnitude over all basic solutions of `A w = b`.

    Args:
        problem (SensingProblem): A must satisfy URP
        budget (int): maximal number of supports C(n, m)

    Returns:
        Tuple[float, float]: (α, β) with 0 < α <= β
    """
    solutions = enumerate_basic_solutions(problem, budget=budget)
    magnitudes = np.concatenate([np.abs(s.values) for s in solutions])
    if magnitudes.size == 0:
        raise CertificateError('b = 0: the basic solutions have no nonzero entries')
    alpha, beta = float(magnitudes.min()), float(magnitudes.max())
    logger.debug('alpha=%.6g, beta=%.6g over %d basic solutions', alpha, beta, len(solutions))
    return alpha, beta


def _check_alpha_beta(alpha: float, beta: float):
    if not (np.isfinite(alpha) and np.isfinite(beta)) or alpha <= 0 or alpha > beta:
        raise ConfigurationError(f'need 0 < alpha <= beta, got alpha={alpha}, beta={beta}')


def _check_sparsity(m: int, k: int):
    if int(k) != k or k < 1:
        raise ConfigurationError(f'k must be a positive integer, got: {k}')
    if int(m) != m or m < 1:
        raise ConfigurationError(f'm must be a positive integer, got: {m}')


def exact_recovery_check(
    spec: PenaltySpec, alpha: float, beta: float, m: int, k: int
) -> RecoveryCertificate:
    """Evaluate k·g(2β) < (m + 1 − k)·g(α) for the penalty induced by `spec`.

    A passing certificate means that the global minimizer of G over {Aw = b} is
    the k-sparse feasible vector, for every instance with these α, β, m.
    """
    spec = PenaltySpec.from_config(spec)
    _check_alpha_beta(alpha, beta)
    _check_sparsity(m, k)
    g_2beta, g_alpha = penalty_values(spec, np.array([2.0 * beta, alpha]))
    lhs = float(k * g_2beta)
    rhs = float((m + 1 - k) * g_alpha)
    passes = bool(2 * k <= m and lhs < rhs - CERTIFICATE_MARGIN * abs(rhs))
    return RecoveryCertificate(
        alpha=float(alpha),
        beta=float(beta),
        k=int(k),
        m=int(m),
        lhs=lhs,
        rhs=rhs,
        passes=passes,
        spec=spec,
    )


def firm_mu_bound(alpha: float, beta: float, m: int, k: int) -> float:
    """Firm thresholding with λ <= μ < bound certifies recovery.

    bound = min(α·c·(1 + sqrt(1 − 1/c)), 2β) with c = (m + 1 − k)/k.
    """
    _check_alpha_beta(alpha, beta)
    _check_sparsity(m, k)
    if 2 * k > m:
        raise CertificateError(f'firm mu bound needs 2k <= m, got k={k}, m={m}')
    c = (m + 1 - k) / k
    return float(min(alpha * c * (1.0 + math.sqrt(1.0 - 1.0 / c)), 2.0 * beta))


def find_p_lambda(
    alpha: float,
    beta: float,
    m: int,
    k: int,
    p_grid: Sequence[float] = P_GRID,
    negative_lambda_grid: Sequence[float] = NEGATIVE_P_LAMBDA_GRID,
) -> RecoveryCertificate:
    """Search p-shrinkage parameters that pass the exact-recovery check.

    First p = 2⁻¹, …, 2⁻²⁰ with λ = p, then p = −1 with λ = 2⁻¹, …, 2⁻⁴⁰.

    Returns:
        RecoveryCertificate: the first passing certificate, `found_params = (p, λ)`
    """
    _check_alpha_beta(alpha, beta)
    _check_sparsity(m, k)
    if 2 * k > m:
        raise CertificateError(f'no p-shrinkage penalty can certify 2k > m, got k={k}, m={m}')

    candidates = [(p, p) for p in p_grid] + [(NEGATIVE_P, lam) for lam in negative_lambda_grid]
    best_ratio = math.inf
    for p, lam in candidates:
        cert = exact_recovery_check(PenaltySpec.pshrink(lam, p), alpha, beta, m, k)
        if cert.passes:
            cert.found_params = (p, lam)
            logger.info('p-shrinkage certificate passes at p=%g, lambda=%g', p, lam)
            return cert
        best_ratio = min(best_ratio, cert.ratio)

    logger.warning(
        'p-shrinkage grid exhausted for alpha=%g, beta=%g, m=%d, k=%d, the grid may be too coarse',
        alpha,
        beta,
        m,
        k,
    )
    raise CertificateError(
        f'no (p, lambda) on the grid passes; closest lhs/rhs ratio was {best_ratio:.6g}'
    )


def _check_feasible(problem: SensingProblem, x: np.ndarray):
    scale = max(1.0, float(np.linalg.norm(problem.b)))
    residual = float(np.linalg.norm(problem.residual(x)))
    if residual > FEASIBILITY_RTOL * scale:
        raise InvalidInputError(f'x is not feasible, ‖Ax − b‖ = {residual:.3e}')


def rnsp_check(
    spec: PenaltySpec,
    problem: SensingProblem,
    x_sparse,
    budget: int = ENUMERATION_BUDGET,
    zero_tol: float = 1e-9,
) -> bool:
    """The restricted null space property at a feasible sparse x.

    For every basic solution w ≠ x, h = x − w must satisfy G(h_T) < G(h_{T^c}),
    T the support of x.
    """
    spec = PenaltySpec.from_config(spec)
    x = check_finite(x_sparse, 'x_sparse').reshape(-1)
    if x.shape[0] != problem.n:
        raise InvalidInputError(f'x has length {x.shape[0]}, A has {problem.n} columns')
    _check_feasible(problem, x)
    k = int(np.count_nonzero(x))
    if 2 * k > problem.m:
        raise CertificateError(f'RNSP check needs 2k <= m, got k={k}, m={problem.m}')

    on_support = x != 0
    solutions = enumerate_basic_solutions(problem, budget=budget)
    h = x - basic_solution_matrix(solutions, problem.n)
    h = h[np.max(np.abs(h), axis=1) > zero_tol]
    if h.shape[0] == 0:
        return True
    values = penalty_values(spec, h)
    inside = values[:, on_support].sum(axis=1)
    outside = values[:, ~on_support].sum(axis=1)
    violations = int(np.sum(inside >= outside))
    logger.debug('RNSP: %d of %d directions violate G(h_T) < G(h_Tc)', violations, h.shape[0])
    return violations == 0


def global_min_exhaustive(
    spec: PenaltySpec, problem: SensingProblem, budget: int = ENUMERATION_BUDGET
) -> np.ndarray:
    """Global minimizer of G over {Aw = b}, found among the basic solutions.

    The minimizer has at most m nonzeros, so comparing G over the basic solutions
    is exhaustive. Ties go to the first basic solution in enumeration order.
    """
    spec = PenaltySpec.from_config(spec)
    if problem.epsilon > 0:
        raise ConfigurationError(
            'global_min_exhaustive solves the equality problem, '
            'use noisy_global_oracle for epsilon > 0'
        )
    solutions = enumerate_basic_solutions(problem, budget=budget)
    candidates = basic_solution_matrix(solutions, problem.n)
    totals = penalty_values(spec, candidates).sum(axis=1)
    best = int(np.argmin(totals))
    logger.debug(
        'global minimum G=%.6g on support %s among %d basic solutions',
        totals[best],
        solutions[best].support,
        len(solutions),
    )
    return candidates[best]


def recovery_certificate(
    spec: PenaltySpec, problem: SensingProblem, k: int, budget: int = ENUMERATION_BUDGET
) -> RecoveryCertificate:
    """α, β of the instance followed by `exact_recovery_check`; firm specs also get `mu_max`."""
    spec = PenaltySpec.from_config(spec)
    alpha, beta = alpha_beta(problem, budget=budget)
    cert = exact_recovery_check(spec, alpha, beta, problem.m, k)
    if spec.family == Penalties.firm and 2 * k <= problem.m:
        cert.mu_max = firm_mu_bound(alpha, beta, problem.m, k)
    return cert

