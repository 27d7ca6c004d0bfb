# Copyright (c) The shrinkcs authors.
import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from shrinkcs.sensing.linalg import (
    ENUMERATION_BUDGET,
    check_enumeration_budget,
    stack_submatrices,
    support_batches,
)
from shrinkcs.sensing.problem import BasicSolution, SensingProblem
from shrinkcs.utils.checks import InvalidInputError

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-10


def enumerate_basic_solutions(
    problem: SensingProblem,
    budget: int = ENUMERATION_BUDGET,
    zero_tol: float = ZERO_TOL,
) -> List[BasicSolution]:
    """All feasible vectors of `A w = b` with at most m nonzero entries.

    Every size-m support S gives the unique solution of A_S w_S = b (URP makes
    A_S invertible). Entries with magnitude <= `zero_tol` are dropped, which
    yields the sparser feasible vectors, and duplicates are merged by support.

    Args:
        problem (SensingProblem): A must satisfy URP
        budget (int): maximal number of supports C(n, m)
        zero_tol (float): canonicalization threshold

    Returns:
        List[BasicSolution]: in lexicographic order of the first support producing each
    """
    A, b = problem.A, problem.b
    m, n = problem.shape
    total = check_enumeration_budget(n, m, budget)

    seen: Dict[Tuple[int, ...], BasicSolution] = {}
    for supports in support_batches(n, m):
        submatrices = stack_submatrices(A, supports)
        rhs = np.broadcast_to(b, (len(supports), m))[..., None]
        try:
            values = np.linalg.solve(submatrices, rhs)[..., 0]
        except np.linalg.LinAlgError as e:
            raise InvalidInputError(
                f'a {m}x{m} column submatrix of A is singular, A violates URP (see check_urp)'
            ) from e
        for support, vals in zip(supports, values):
            keep = np.abs(vals) > zero_tol
            key = tuple(int(i) for i in support[keep])
            if key in seen:
                continue
            kept = vals[keep]
            residual = float(np.linalg.norm(A[:, list(key)] @ kept - b))
            seen[key] = BasicSolution(support=key, values=kept, residual=residual)

    solutions = list(seen.values())
    logger.debug('%d distinct basic solutions from %d supports', len(solutions), total)
    return solutions


def basic_solution_matrix(solutions: Sequence[BasicSolution], n: int) -> np.ndarray:
    """Stack basic solutions into a dense (len(solutions), n) array."""
    out = np.zeros((len(solutions), n))
    for row, solution in zip(out, solutions):
        row[list(solution.support)] = solution.values
    return out
