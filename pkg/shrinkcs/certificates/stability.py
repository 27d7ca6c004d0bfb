# Copyright (c) The shrinkcs authors.
"""
Stability certificates for min G(w) subject to ‖Aw − b‖ <= ε.

Every size-m support S has the equality solution A_S⁻¹b with magnitudes in
[α_S, β_S]. Within the noise ball these magnitudes move by at most ‖A_S⁻¹‖ε,
which gives the noisy α, β. Projecting the target x onto its support T adds
‖x_{T^c}‖_∞ + 2ε to the lower bound and ε to the upper one, and with

    τ = k·g(2β′) / ((n − k)·g(α′)) < 1,   D = C√n,  C = 1

the error of the constrained minimizer w* is bounded by

    G(x − w*) <= C1·ε + C2·G(x_{T^c}),   C1 = 4D/(1 − τ),  C2 = 2(1 + τ)/(1 − τ).

C = 1 holds because g(t) <= |t|, hence G(v) <= ‖v‖₁ <= √n‖v‖₂.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from shrinkcs.penalties import PenaltySpec, penalty_total, penalty_values
from shrinkcs.sensing import SensingProblem
from shrinkcs.sensing.linalg import (
    ENUMERATION_BUDGET,
    check_enumeration_budget,
    stack_submatrices,
    support_batches,
)
from shrinkcs.utils.checks import (
    CertificateError,
    ConfigurationError,
    InvalidInputError,
    check_finite,
)

logger = logging.getLogger(__name__)

NORM_CONSTANT = 1.0
DEGENERATE_TOL = 1e-10


@dataclass(eq=False)
class StabilityCertificate:
    """
    Noisy bounds of a sensing problem and, once completed, the stability bound.

    `noisy_alpha_beta` fills the per-support part; `certify_stability` adds the
    projected bounds, τ, the constants and the bound itself.

    Args:
        alpha_S_min (float): min_S α_S, α_S the smallest magnitude of A_S⁻¹b
        beta_S_max (float): max_S β_S, β_S the largest magnitude of A_S⁻¹b
        eps_max (float): min_S α_S / ‖A_S⁻¹‖, the admissible noise level
        epsilon (float): noise level the certificate is for
        alpha (float): min_S (α_S − ‖A_S⁻¹‖ε)
        beta (float): max_S (β_S + ‖A_S⁻¹‖ε)
        n (int): number of unknowns, D = C√n
    """

    alpha_S_min: float
    beta_S_max: float
    eps_max: float
    epsilon: float
    alpha: float
    beta: float
    n: int
    supports: np.ndarray = field(repr=False, default=None)
    alpha_S: np.ndarray = field(repr=False, default=None)
    beta_S: np.ndarray = field(repr=False, default=None)
    inverse_norms: np.ndarray = field(repr=False, default=None)
    k: Optional[int] = None
    alpha_prime: Optional[float] = None
    beta_prime: Optional[float] = None
    tail: Optional[float] = None
    tau: Optional[float] = None
    C: float = NORM_CONSTANT
    D: Optional[float] = None
    C1: Optional[float] = None
    C2: Optional[float] = None
    bound: Optional[float] = None
    spec: Optional[PenaltySpec] = None

    @property
    def complete(self) -> bool:  # noqa: D102
        return self.bound is not None

    def to_dict(self) -> Dict[str, Any]:
        """Scalar fields plus per-support summaries, JSON serializable."""
        out = {
            name: getattr(self, name)
            for name in (
                'alpha_S_min',
                'beta_S_max',
                'eps_max',
                'epsilon',
                'alpha',
                'beta',
                'n',
                'k',
                'alpha_prime',
                'beta_prime',
                'tail',
                'tau',
                'C',
                'D',
                'C1',
                'C2',
                'bound',
            )
        }
        out['penalty'] = None if self.spec is None else self.spec.to_dict()
        out['num_supports'] = 0 if self.supports is None else int(len(self.supports))
        if self.inverse_norms is not None:
            out['max_inverse_norm'] = float(np.max(self.inverse_norms))
        return out


def noisy_alpha_beta(
    problem: SensingProblem, budget: int = ENUMERATION_BUDGET
) -> StabilityCertificate:
    """Per-support bounds of the noisy problem at `problem.epsilon`.

    Args:
        problem (SensingProblem): A must satisfy URP, ε = `problem.epsilon`
        budget (int): maximal number of supports C(n, m)

    Returns:
        StabilityCertificate: the partial certificate (α_S, β_S, ‖A_S⁻¹‖, ε_max, α, β)
    """
    m, n = problem.shape
    check_enumeration_budget(n, m, budget)
    epsilon = problem.epsilon

    all_supports, alphas, betas, norms = [], [], [], []
    for supports in support_batches(n, m):
        submatrices = stack_submatrices(problem.A, supports)
        singular = np.linalg.svd(submatrices, compute_uv=False)
        if np.any(singular[:, -1] <= DEGENERATE_TOL * singular[:, 0]):
            raise InvalidInputError('a column submatrix A_S is singular, A violates URP')
        rhs = np.broadcast_to(problem.b, (len(supports), m))[..., None]
        magnitudes = np.abs(np.linalg.solve(submatrices, rhs)[..., 0])
        all_supports.append(supports)
        alphas.append(magnitudes.min(axis=1))
        betas.append(magnitudes.max(axis=1))
        norms.append(1.0 / singular[:, -1])

    supports = np.concatenate(all_supports)
    alpha_S, beta_S = np.concatenate(alphas), np.concatenate(betas)
    inverse_norms = np.concatenate(norms)

    degenerate = alpha_S <= DEGENERATE_TOL * max(1.0, float(np.max(beta_S)))
    if np.any(degenerate):
        worst = tuple(int(i) for i in supports[int(np.argmax(degenerate))])
        raise CertificateError(
            f'degenerate data: A_S⁻¹b has a zero entry for support {worst}, '
            'the noisy bounds need alpha_S > 0 on every support'
        )

    eps_max = float(np.min(alpha_S / inverse_norms))
    if epsilon >= eps_max:
        raise CertificateError(f'epsilon={epsilon:g} is not below eps_max={eps_max:.12g}')

    alpha = float(np.min(alpha_S - inverse_norms * epsilon))
    beta = float(np.max(beta_S + inverse_norms * epsilon))
    logger.debug(
        'noisy bounds over %d supports: eps_max=%.6g, alpha=%.6g, beta=%.6g',
        len(supports),
        eps_max,
        alpha,
        beta,
    )
    return StabilityCertificate(
        alpha_S_min=float(np.min(alpha_S)),
        beta_S_max=float(np.max(beta_S)),
        eps_max=eps_max,
        epsilon=float(epsilon),
        alpha=alpha,
        beta=beta,
        n=n,
        supports=supports,
        alpha_S=alpha_S,
        beta_S=beta_S,
        inverse_norms=inverse_norms,
    )


def _support_mask(n: int, support: Sequence[int]) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    idx = np.asarray(list(support), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise InvalidInputError(f'support indices must lie in [0, {n}), got {list(support)}')
    mask[idx] = True
    return mask


def projected_error_bounds(
    cert: StabilityCertificate, x, support: Sequence[int], epsilon: float
) -> Tuple[float, float]:
    """α′ = α − ‖x_{T^c}‖_∞ − 2ε and β′ = β + ε for the target x restricted to T.

    Requires min_S α_S > ‖x_{T^c}‖_∞ and ε < min_S (α_S − ‖x_{T^c}‖_∞)/(2 + ‖A_S⁻¹‖).
    """
    x = check_finite(x, 'x').reshape(-1)
    if x.shape[0] != cert.n:
        raise InvalidInputError(f'x has length {x.shape[0]}, the certificate has n={cert.n}')
    if not np.isfinite(epsilon) or epsilon < 0:
        raise ConfigurationError(f'epsilon must be nonnegative, got: {epsilon}')
    outside = ~_support_mask(cert.n, support)
    tail_inf = float(np.max(np.abs(x[outside]), initial=0.0))

    if cert.alpha_S_min <= tail_inf:
        raise CertificateError(
            f'‖x_Tc‖_inf = {tail_inf:.6g} is not below min alpha_S = {cert.alpha_S_min:.6g}'
        )
    admissible = float(np.min((cert.alpha_S - tail_inf) / (2.0 + cert.inverse_norms)))
    if epsilon >= admissible:
        raise CertificateError(
            f'epsilon={epsilon:g} is not below the projected-bounds limit {admissible:.12g}'
        )
    alpha_prime = cert.alpha - tail_inf - 2.0 * epsilon
    beta_prime = cert.beta + epsilon
    if alpha_prime <= 0:
        raise CertificateError(
            f"projected lower bound alpha'={alpha_prime:.6g} is not positive"
        )
    return float(alpha_prime), float(beta_prime)


def stability_constants(
    spec: PenaltySpec, alpha_prime: float, beta_prime: float, n: int, k: int
) -> Tuple[float, float, float, float]:
    """(τ, D, C1, C2) of the stability bound, D = √n (C = 1)."""
    spec = PenaltySpec.from_config(spec)
    if not 0 < alpha_prime <= beta_prime:
        raise ConfigurationError(
            f"need 0 < alpha' <= beta', got alpha'={alpha_prime}, beta'={beta_prime}"
        )
    if int(k) != k or k < 1 or 2 * k >= n:
        raise CertificateError(f'the stability bound needs 1 <= k and 2k < n, got k={k}, n={n}')
    g_2beta, g_alpha = penalty_values(spec, np.array([2.0 * beta_prime, alpha_prime]))
    tau = float(k * g_2beta / ((n - k) * g_alpha))
    if tau >= 1.0:
        raise CertificateError(
            f"tau = k g(2beta') / ((n - k) g(alpha')) = {tau:.6g} is not below 1"
        )
    D = NORM_CONSTANT * math.sqrt(n)
    C1 = 4.0 * D / (1.0 - tau)
    C2 = 2.0 * (1.0 + tau) / (1.0 - tau)
    return tau, D, C1, C2


def stability_bound(
    spec: PenaltySpec,
    alpha_prime: float,
    beta_prime: float,
    n: int,
    k: int,
    epsilon: float,
    tail: float,
) -> float:
    """2/(1 − τ)·[2C√n·ε + (1 + τ)·G(x_{T^c})], an upper bound on G(x − w*).

    Args:
        spec (PenaltySpec): the penalty G
        alpha_prime (float): projected lower bound α′
        beta_prime (float): projected upper bound β′
        n (int): number of unknowns
        k (int): size of the target support T, 2k < n
        epsilon (float): noise level ε >= 0
        tail (float): G(x_{T^c}) >= 0

    Returns:
        float: C1·ε + C2·tail
    """
    if not np.isfinite(epsilon) or epsilon < 0:
        raise ConfigurationError(f'epsilon must be nonnegative, got: {epsilon}')
    if not np.isfinite(tail) or tail < 0:
        raise ConfigurationError(f'tail must be nonnegative, got: {tail}')
    _, _, C1, C2 = stability_constants(spec, alpha_prime, beta_prime, n, k)
    return float(C1 * epsilon + C2 * tail)


def certify_stability(
    problem: SensingProblem,
    spec: PenaltySpec,
    x,
    support: Sequence[int],
    epsilon: Optional[float] = None,
    budget: int = ENUMERATION_BUDGET,
) -> StabilityCertificate:
    """Noisy bounds, projected bounds and the stability bound in one certificate.

    Args:
        problem (SensingProblem): the noisy problem
        spec (PenaltySpec): the penalty G
        x: the target vector, ‖Ax − b‖ <= ε
        support (Sequence[int]): T, the k entries of x to be recovered
        epsilon (float): noise level, defaults to `problem.epsilon`
        budget (int): maximal number of supports C(n, m)

    Returns:
        StabilityCertificate: complete certificate with `bound`
    """
    spec = PenaltySpec.from_config(spec)
    if epsilon is not None:
        problem = problem.with_epsilon(epsilon)
    epsilon = problem.epsilon
    x = check_finite(x, 'x').reshape(-1)
    cert = noisy_alpha_beta(problem, budget=budget)
    alpha_prime, beta_prime = projected_error_bounds(cert, x, support, epsilon)

    outside = ~_support_mask(problem.n, support)
    tail = penalty_total(spec, x[outside]) if outside.any() else 0.0
    k = int(len(set(support)))
    tau, D, C1, C2 = stability_constants(spec, alpha_prime, beta_prime, problem.n, k)

    cert.spec = spec
    cert.k = k
    cert.alpha_prime, cert.beta_prime = alpha_prime, beta_prime
    cert.tail = float(tail)
    cert.tau, cert.D, cert.C1, cert.C2 = tau, D, C1, C2
    cert.bound = float(C1 * epsilon + C2 * tail)
    logger.info(
        'stability certificate: tau=%.4g, C=%g, D=%.4g, bound=%.6g',
        tau,
        cert.C,
        D,
        cert.bound,
    )
    return cert
