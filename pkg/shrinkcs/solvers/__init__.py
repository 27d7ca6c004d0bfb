# Copyright (c) The shrinkcs authors.
from .admm import ADMMSolver, admm_equality_solve, project_affine, restore_feasibility
from .base import (
    SOLVERS,
    Solver,
    SolverConfig,
    SolverResult,
    Termination,
    build_solver,
)
from .ips import IPSSolver, ips_solve, rescale_problem
from .objective import (
    boundedness_radius,
    equality_stationarity_residual,
    lambda_min_for_negative_p,
    objective_Fp,
    stationarity_residual,
)
