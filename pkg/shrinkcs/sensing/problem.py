# Copyright (c) The shrinkcs authors.
import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from shrinkcs.utils.checks import ConfigurationError, InvalidInputError, check_finite
from shrinkcs.utils.file_utils import read_matrix_csv, write_matrix_csv

logger = logging.getLogger(__name__)

ORTHONORMAL_ATOL = 1e-10


def has_orthonormal_rows(A, atol: float = ORTHONORMAL_ATOL) -> bool:
    """Whether ‖AAᵀ − I‖_max <= atol."""
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    gram = A @ A.T
    return bool(np.max(np.abs(gram - np.eye(A.shape[0])), initial=0.0) <= atol)


@dataclass(eq=False)
class SensingProblem:
    """
    Linear measurements `b = A x` of an unknown vector, possibly noisy.

    Args:
        A (np.ndarray): m x n measurement matrix, m <= n
        b (np.ndarray): measurements, length m
        epsilon (float): noise radius, 0 means the equality-constrained problem
        rows_orthonormal (bool): asserts AAᵀ = I (checked to 1e-10)
    """

    A: np.ndarray
    b: np.ndarray
    epsilon: float = 0.0
    rows_orthonormal: bool = False

    def __post_init__(self):
        self.A = check_finite(self.A, 'A')
        if self.A.ndim != 2:
            raise InvalidInputError(f'A must be a matrix, got shape {self.A.shape}')
        self.b = check_finite(self.b, 'b').reshape(-1)
        m, n = self.A.shape
        if m < 1 or m > n:
            raise InvalidInputError(f'A must have 1 <= m <= n, got {m}x{n}')
        if self.b.shape[0] != m:
            raise InvalidInputError(f'b has length {self.b.shape[0]}, A has {m} rows')
        if not np.isfinite(self.epsilon) or self.epsilon < 0:
            raise ConfigurationError(f'epsilon must be nonnegative, got: {self.epsilon}')
        self.epsilon = float(self.epsilon)
        if self.rows_orthonormal and not has_orthonormal_rows(self.A):
            raise InvalidInputError(
                'rows_orthonormal is set but ‖AAᵀ − I‖_max > 1e-10, use orthonormalize_rows'
            )

    @property
    def m(self) -> int:  # noqa: D102
        return self.A.shape[0]

    @property
    def n(self) -> int:  # noqa: D102
        return self.A.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:  # noqa: D102
        return self.A.shape

    def residual(self, x) -> np.ndarray:
        """A x − b"""
        x = check_finite(x, 'x').reshape(-1)
        if x.shape[0] != self.n:
            raise InvalidInputError(f'x has length {x.shape[0]}, A has {self.n} columns')
        return self.A @ x - self.b

    def with_epsilon(self, epsilon: float) -> 'SensingProblem':  # noqa: D102
        return replace(self, epsilon=float(epsilon))

    def augmented(self) -> np.ndarray:
        """The m x (n+1) matrix [A | b] stored in problem CSV files."""
        return np.hstack([self.A, self.b.reshape(-1, 1)])

    @classmethod
    def from_augmented(
        cls,
        matrix,
        epsilon: float = 0.0,
        rows_orthonormal: Optional[bool] = None,
    ) -> 'SensingProblem':
        """Split [A | b]; `rows_orthonormal=None` detects the flag from A."""
        matrix = np.atleast_2d(check_finite(matrix, 'problem'))
        if matrix.shape[1] < 2:
            raise InvalidInputError(f'augmented matrix needs 2 or more columns, got {matrix.shape}')
        A, b = matrix[:, :-1], matrix[:, -1]
        if rows_orthonormal is None:
            rows_orthonormal = has_orthonormal_rows(A)
        return cls(A=A, b=b, epsilon=epsilon, rows_orthonormal=rows_orthonormal)


def read_problem_csv(path: str, epsilon: float = 0.0) -> SensingProblem:  # noqa: D103
    problem = SensingProblem.from_augmented(read_matrix_csv(path), epsilon=epsilon)
    logger.info(
        'Loaded %dx%d problem from %s (rows orthonormal: %s)',
        problem.m,
        problem.n,
        path,
        problem.rows_orthonormal,
    )
    return problem


def write_problem_csv(path: str, problem: SensingProblem) -> str:  # noqa: D103
    return write_matrix_csv(path, problem.augmented())


@dataclass(eq=False)
class BasicSolution:
    """
    A feasible vector of `A w = b` with at most m nonzero entries.

    Args:
        support (tuple): sorted indices of the nonzero entries
        values (np.ndarray): the entries on `support`
        residual (float): ‖A_S values − b‖₂
    """

    support: Tuple[int, ...]
    values: np.ndarray = field(repr=False)
    residual: float = 0.0

    @property
    def nnz(self) -> int:  # noqa: D102
        return len(self.support)

    def to_dense(self, n: int) -> np.ndarray:  # noqa: D102
        w = np.zeros(n)
        w[list(self.support)] = self.values
        return w


def planted_sparse_vector(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """A k-sparse vector with random support and entries sign·(1 + U[0, 1]).

    Magnitudes stay in [1, 2], so the smallest nonzero entry is bounded away from 0.
    """
    if k < 0 or k > n:
        raise ConfigurationError(f'sparsity must satisfy 0 <= k <= n, got k={k}, n={n}')
    x = np.zeros(n)
    support = rng.choice(n, size=k, replace=False)
    signs = rng.choice(np.array([-1.0, 1.0]), size=k)
    x[support] = signs * (1.0 + rng.uniform(0.0, 1.0, size=k))
    return x
