# Copyright (c) The shrinkcs authors.
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np
from scipy.linalg import solve_triangular

from shrinkcs.sensing.problem import SensingProblem
from shrinkcs.utils.checks import (
    BudgetExceededError,
    ConfigurationError,
    InvalidInputError,
    check_finite,
)

logger = logging.getLogger(__name__)

RANK_RTOL = 1e-10
ENUMERATION_BUDGET = 10**6
MAX_EXHAUSTIVE_ROWS = 20
SUPPORT_BATCH_SIZE = 4096
POWER_ITERATION_RTOL = 1e-10
POWER_ITERATION_MAX_ITERS = 10000


def gaussian_matrix(m: int, n: int, seed: int) -> np.ndarray:
    """An m x n matrix of i.i.d. standard normal entries.

    The stream is `numpy.random.Generator(PCG64(seed))`, which is stable across
    platforms and numpy versions.
    """
    if not 0 < m < n:
        raise ConfigurationError(f'gaussian_matrix needs 0 < m < n, got m={m}, n={n}')
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.standard_normal((m, n))


def orthonormalize_rows(problem: SensingProblem, rtol: float = RANK_RTOL) -> SensingProblem:
    """Left-multiply `A w = b` by an invertible E so that (EA)(EA)ᵀ = I.

    With Aᵀ = QR (reduced QR, diag(R) > 0) we take E = R⁻ᵀ, so EA = Qᵀ and
    Eb solves Rᵀ y = b. E is invertible, hence {w : Aw = b} is unchanged.

    Args:
        problem (SensingProblem): problem with linearly independent rows
        rtol (float): rows count as dependent when |R_ii| <= rtol * max|R_jj|

    Returns:
        SensingProblem: the equivalent problem with `rows_orthonormal=True`
    """
    Q, R = np.linalg.qr(problem.A.T)
    diag = np.diag(R)
    scale = np.max(np.abs(diag), initial=0.0)
    if scale == 0 or np.any(np.abs(diag) <= rtol * scale):
        raise InvalidInputError(
            f'rows of A are linearly dependent (|diag R| = {np.abs(diag)}), cannot orthonormalize'
        )
    signs = np.where(diag < 0, -1.0, 1.0)
    Q = Q * signs
    R = signs.reshape(-1, 1) * R
    b = solve_triangular(R, problem.b, trans='T', lower=False)
    if problem.epsilon > 0:
        logger.warning_once(
            'Orthonormalizing a noisy problem maps the noise ball through E = R^-T; '
            'epsilon=%g is kept as given.',
            problem.epsilon,
        )
    return SensingProblem(A=Q.T.copy(), b=b, epsilon=problem.epsilon, rows_orthonormal=True)


def kernel_basis(A, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of ker A as the columns of an n x (n - rank) matrix."""
    A = np.atleast_2d(check_finite(A, 'A'))
    _, s, vt = np.linalg.svd(A, full_matrices=True)
    rank = int(np.sum(s > rtol * np.max(s, initial=0.0))) if np.any(s) else 0
    return vt[rank:].T


def operator_norm(
    A,
    rtol: float = POWER_ITERATION_RTOL,
    max_iters: int = POWER_ITERATION_MAX_ITERS,
    seed: int = 0,
) -> float:
    """Largest singular value of A by power iteration on AᵀA.

    Iteration stops once the eigen-residual ‖AᵀAv − θv‖ is at most `rtol * θ`.

    Args:
        A: finite matrix
        rtol (float): relative residual tolerance
        max_iters (int): iteration cap, a warning is logged when it is hit
        seed (int): seed of the random start vector

    Returns:
        float: σ_max(A), 0 for the zero matrix
    """
    A = np.atleast_2d(check_finite(A, 'A'))
    if not np.any(A):
        return 0.0
    rng = np.random.Generator(np.random.PCG64(seed))
    v = rng.standard_normal(A.shape[1])
    v /= np.linalg.norm(v)
    theta = 0.0
    for _ in range(max_iters):
        w = A.T @ (A @ v)
        theta = float(v @ w)
        if theta <= 0:
            # start vector in the kernel
            v = rng.standard_normal(A.shape[1])
            v /= np.linalg.norm(v)
            continue
        if np.linalg.norm(w - theta * v) <= rtol * theta:
            return math.sqrt(theta)
        v = w / np.linalg.norm(w)
    logger.warning(
        'Power iteration did not reach rtol=%g in %d iterations, sigma ~ %.12g',
        rtol,
        max_iters,
        math.sqrt(max(theta, 0.0)),
    )
    return math.sqrt(max(theta, 0.0))


def support_batches(
    n: int, m: int, batch_size: int = SUPPORT_BATCH_SIZE
) -> Iterator[np.ndarray]:
    """All size-m supports of range(n) in lexicographic order, as (batch, m) index arrays."""
    combos = itertools.combinations(range(n), m)
    while True:
        batch = list(itertools.islice(combos, batch_size))
        if not batch:
            return
        yield np.asarray(batch, dtype=np.int64).reshape(len(batch), m)


def stack_submatrices(A: np.ndarray, supports: np.ndarray) -> np.ndarray:
    """(batch, m, |S|) array of the column submatrices A_S."""
    return A[:, supports].transpose(1, 0, 2)


def check_enumeration_budget(n: int, m: int, budget: int = ENUMERATION_BUDGET) -> int:
    """Number of size-m supports, raising when it is above `budget`."""
    count = math.comb(n, m)
    if count > budget:
        raise BudgetExceededError(
            f'C({n}, {m}) = {count} supports exceed the enumeration budget of {budget}'
        )
    return count


@dataclass
class URPReport:
    """
    Outcome of a unique-representation-property check; truthy iff URP holds.

    Args:
        holds (bool): every checked m-column submatrix is well conditioned
        mode (str): `exhaustive` or `randomized`
        supports_checked (int): number of submatrices examined
        worst_ratio (float): smallest σ_min(A_S) / σ_max(A) seen
        worst_support (tuple): the support attaining `worst_ratio`
    """

    holds: bool
    mode: str
    supports_checked: int
    worst_ratio: float
    worst_support: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.holds


def check_urp(
    A,
    randomized: bool = False,
    samples: int = 10000,
    seed: int = 0,
    rtol: float = RANK_RTOL,
    budget: int = ENUMERATION_BUDGET,
) -> URPReport:
    """Check that every set of m columns of A is linearly independent.

    Exhaustive when m <= 20 and C(n, m) <= `budget`; otherwise `samples` random
    supports are checked if `randomized` is set, which can only prove a violation.

    Args:
        A: m x n matrix
        randomized (bool): allow sampled supports past the exhaustive budget
        samples (int): number of sampled supports
        seed (int): sampling seed
        rtol (float): a submatrix is singular when σ_min <= rtol * σ_max(A)
        budget (int): exhaustive combinatorial budget

    Returns:
        URPReport: truthy iff no singular submatrix was found
    """
    A = np.atleast_2d(check_finite(A, 'A'))
    m, n = A.shape
    if m > n:
        raise InvalidInputError(f'URP needs m <= n, got {m}x{n}')
    sigma_max = float(np.linalg.svd(A, compute_uv=False)[0])
    if sigma_max == 0:
        return URPReport(False, 'exhaustive', 0, 0.0, tuple(range(m)))

    exhaustive = m <= MAX_EXHAUSTIVE_ROWS and math.comb(n, m) <= budget
    if exhaustive:
        mode, batches = 'exhaustive', support_batches(n, m)
    elif randomized:
        rng = np.random.Generator(np.random.PCG64(seed))
        keys = rng.random((samples, n))
        supports = np.sort(np.argsort(keys, axis=1)[:, :m], axis=1)
        mode = 'randomized'
        batches = (
            supports[i : i + SUPPORT_BATCH_SIZE] for i in range(0, samples, SUPPORT_BATCH_SIZE)
        )
    else:
        raise BudgetExceededError(
            f'exhaustive URP check of C({n}, {m}) = {math.comb(n, m)} supports exceeds the '
            f'budget of {budget} (or m > {MAX_EXHAUSTIVE_ROWS}); pass randomized=True'
        )

    checked, worst_ratio, worst_support = 0, np.inf, None
    for supports in batches:
        sigma_min = np.linalg.svd(stack_submatrices(A, supports), compute_uv=False)[:, -1]
        ratios = sigma_min / sigma_max
        idx = int(np.argmin(ratios))
        if ratios[idx] < worst_ratio:
            worst_ratio, worst_support = float(ratios[idx]), tuple(int(i) for i in supports[idx])
        checked += len(supports)

    holds = bool(worst_ratio > rtol)
    logger.debug(
        'URP %s check of %d supports: worst ratio %.3g at %s',
        mode,
        checked,
        worst_ratio,
        worst_support,
    )
    return URPReport(holds, mode, checked, worst_ratio, worst_support)
