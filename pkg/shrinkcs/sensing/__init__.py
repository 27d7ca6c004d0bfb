# Copyright (c) The shrinkcs authors.
from .basic_solutions import basic_solution_matrix, enumerate_basic_solutions
from .linalg import (
    URPReport,
    check_urp,
    gaussian_matrix,
    kernel_basis,
    operator_norm,
    orthonormalize_rows,
)
from .problem import (
    BasicSolution,
    SensingProblem,
    has_orthonormal_rows,
    planted_sparse_vector,
    read_problem_csv,
    write_problem_csv,
)
