# Copyright (c) The shrinkcs authors.
import logging
from typing import Any, Dict, List, Tuple

import pandas as pd

from shrinkcs.experiments.base import EXPERIMENTS, Experiment, map_trials, relative_error
from shrinkcs.experiments.config import ExperimentConfig
from shrinkcs.metainfo import Experiments, Solvers
from shrinkcs.penalties import PenaltySpec
from shrinkcs.sensing import (
    SensingProblem,
    gaussian_matrix,
    orthonormalize_rows,
    planted_sparse_vector,
)
from shrinkcs.solvers import SolverConfig, build_solver
from shrinkcs.utils.checks import ConfigurationError
from shrinkcs.utils.common_utils import derive_seed, make_rng

logger = logging.getLogger(__name__)

PHASE_DIAGRAM_SOLVER_DEFAULTS = dict(max_iters=5000, step_tol=1e-10, objective_trace=False)

# the stream that draws the planted vector, next to the one that draws A
SIGNAL_STREAM = 1


def planted_instance(seed: int, n: int, m: int, k: int, trial: int) -> Tuple[SensingProblem, Any]:
    """The seeded Gaussian instance of one trial: (orthonormalized problem, planted x).

    The instance depends on (seed, m, k, trial) only, so every penalty sees the
    same instances.
    """
    A = gaussian_matrix(m, n, derive_seed(seed, m, k, trial))
    x = planted_sparse_vector(n, k, make_rng(seed, m, k, trial, SIGNAL_STREAM))
    return orthonormalize_rows(SensingProblem(A, A @ x)), x


@EXPERIMENTS.register_module(module_name=Experiments.phase_diagram)
class PhaseDiagram(Experiment):
    """
    Empirical recovery rates over (m, k) for the configured penalties.

    grid:
        n (int): signal length
        m (list): numbers of measurements, each 0 < m < n
        k (list): sparsities, defaults to 0..m for every m; cells with k > m are skipped
    solver:
        `SolverConfig` fields of the equality-constrained ADMM solver
    """

    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.penalties = config.require_penalties()
        self.n = config.int_range('n')[0]
        self.ms = config.int_range('m')
        for m in self.ms:
            if not 0 < m < self.n:
                raise ConfigurationError(f'phase diagram needs 0 < m < n, got m={m}, n={self.n}')
        self.ks = config.grid.get('k')
        if self.ks is not None:
            self.ks = config.int_range('k')
            if min(self.ks) < 0:
                raise ConfigurationError(f'sparsities must be nonnegative, got: {self.ks}')
        self.solver_config = SolverConfig.from_config(
            {**PHASE_DIAGRAM_SOLVER_DEFAULTS, **config.solver}
        )

    def cells(self) -> List[Tuple[int, int, int]]:
        """(penalty index, m, k) in output order."""
        cells = []
        for index in range(len(self.penalties)):
            for m in self.ms:
                ks = range(m + 1) if self.ks is None else [k for k in self.ks if k <= m]
                cells.extend((index, m, k) for k in ks)
        if not cells:
            raise ConfigurationError(
                f'phase diagram grid has no cell with k <= m: {self.config.grid}'
            )
        return cells

    def run_trial(self, task: Tuple[int, int, int, int]) -> Dict[str, Any]:
        """One solve of one cell."""
        index, m, k, trial = task
        spec: PenaltySpec = self.penalties[index]
        problem, x = planted_instance(self.config.seed, self.n, m, k, trial)
        result = build_solver(Solvers.admm, self.solver_config).solve(problem, spec)
        error = relative_error(result.x_final, x)
        logger.debug('%s m=%d k=%d trial %d: rel. error %.3e', spec.describe(), m, k, trial, error)
        return {
            'penalty_index': index,
            'm': m,
            'k': k,
            'trial': trial,
            'error': error,
            'iterations': result.iterations,
            'success': error <= self.config.success_tol,
        }

    def run(self) -> pd.DataFrame:  # noqa: D102
        tasks = [
            (index, m, k, trial)
            for index, m, k in self.cells()
            for trial in range(self.config.trials)
        ]
        records = map_trials(self.run_trial, tasks, self.config.workers, desc='phase diagram')
        trials = pd.DataFrame.from_records(records).sort_values(
            ['penalty_index', 'm', 'k', 'trial'], kind='mergesort'
        )
        table = (
            trials.groupby(['penalty_index', 'm', 'k'], sort=True)
            .agg(
                trials=('trial', 'count'),
                successes=('success', 'sum'),
                mean_error=('error', 'mean'),
                mean_iterations=('iterations', 'mean'),
            )
            .reset_index()
        )
        table['success_rate'] = table['successes'] / table['trials']
        table['n'] = self.n
        table['delta'] = table['m'] / self.n
        table['rho'] = table['k'] / table['m']
        table.insert(0, 'penalty', [self.penalties[i].describe() for i in table['penalty_index']])
        columns = ['penalty', 'n', 'm', 'k', 'delta', 'rho', 'trials', 'successes']
        columns += ['success_rate', 'mean_error', 'mean_iterations']
        return table[columns]

    def summarize(self, table: pd.DataFrame) -> Dict[str, Any]:  # noqa: D102
        return {
            'cells': int(len(table)),
            'mean_success_rate': {
                name: float(group['success_rate'].mean())
                for name, group in table.groupby('penalty', sort=False)
            },
        }
