# Copyright (c) The shrinkcs authors.
import logging
from typing import Any, Dict, Tuple

import numpy as np
import pandas as pd

from shrinkcs.certificates import (
    alpha_beta,
    find_p_lambda,
    firm_mu_bound,
    global_min_exhaustive,
)
from shrinkcs.experiments.base import EXPERIMENTS, Experiment, map_trials
from shrinkcs.experiments.config import ExperimentConfig
from shrinkcs.metainfo import Experiments
from shrinkcs.sensing import SensingProblem, gaussian_matrix, planted_sparse_vector
from shrinkcs.utils.checks import CertificateError, ConfigurationError
from shrinkcs.utils.common_utils import derive_seed, make_rng

logger = logging.getLogger(__name__)

VALUE_ATOL = 1e-8
SIGNAL_STREAM = 1


def same_sparse_vector(w: np.ndarray, x: np.ndarray, atol: float = VALUE_ATOL) -> bool:
    """Equal supports and values within `atol`."""
    return bool(np.array_equal(w != 0, x != 0) and np.allclose(w, x, rtol=0.0, atol=atol))


@EXPERIMENTS.register_module(module_name=Experiments.certify_sweep)
class CertifySweep(Experiment):
    """
    Run the p-shrinkage parameter search on seeded instances and check every
    certified penalty against the exhaustive global minimizer.

    grid:
        n (int): signal length
        m (list): numbers of measurements, each 0 < m < n
        k (list): sparsities; cells with k < 1 or 2k > m are skipped
    """

    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.n = config.int_range('n')[0]
        self.ms = config.int_range('m')
        self.ks = config.int_range('k')
        for m in self.ms:
            if not 0 < m < self.n:
                raise ConfigurationError(f'certify sweep needs 0 < m < n, got m={m}, n={self.n}')
        self.cells = [(m, k) for m in self.ms for k in self.ks if 1 <= k and 2 * k <= m]
        if not self.cells:
            raise ConfigurationError(f'no (m, k) with 1 <= k and 2k <= m in {config.grid}')

    def run_trial(self, task: Tuple[int, int, int]) -> Dict[str, Any]:
        """Certificate search and exhaustive check on one instance."""
        m, k, trial = task
        seed = self.config.seed
        A = gaussian_matrix(m, self.n, derive_seed(seed, m, k, trial))
        x = planted_sparse_vector(self.n, k, make_rng(seed, m, k, trial, SIGNAL_STREAM))
        problem = SensingProblem(A, A @ x)
        alpha, beta = alpha_beta(problem)
        record = {
            'm': m,
            'k': k,
            'trial': trial,
            'alpha': alpha,
            'beta': beta,
            'mu_bound': firm_mu_bound(alpha, beta, m, k),
            'found': False,
            'p': np.nan,
            'lam': np.nan,
            'ratio': np.nan,
            'recovered': False,
        }
        try:
            cert = find_p_lambda(alpha, beta, m, k)
        except CertificateError as e:
            logger.info('m=%d k=%d trial %d: %s', m, k, trial, e.message)
            return record
        w = global_min_exhaustive(cert.spec, problem)
        record.update(
            found=True,
            p=cert.found_params[0],
            lam=cert.found_params[1],
            ratio=cert.ratio,
            recovered=same_sparse_vector(w, x),
        )
        if not record['recovered']:
            logger.warning('m=%d k=%d trial %d: certified penalty missed x', m, k, trial)
        return record

    def run(self) -> pd.DataFrame:  # noqa: D102
        tasks = [(m, k, trial) for m, k in self.cells for trial in range(self.config.trials)]
        records = map_trials(self.run_trial, tasks, self.config.workers, desc='certify sweep')
        table = pd.DataFrame.from_records(records)
        table.insert(0, 'n', self.n)
        return table.sort_values(['m', 'k', 'trial'], kind='mergesort').reset_index(drop=True)

    def summarize(self, table: pd.DataFrame) -> Dict[str, Any]:  # noqa: D102
        found = table['found']
        return {
            'instances': int(len(table)),
            'found_rate': float(found.mean()),
            'counterexamples': int(np.sum(found & ~table['recovered'])),
        }
