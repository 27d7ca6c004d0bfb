# Copyright (c) The shrinkcs authors.
import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np
import pandas as pd

from shrinkcs.experiments.base import EXPERIMENTS, Experiment, map_trials
from shrinkcs.experiments.config import ExperimentConfig
from shrinkcs.imaging import (
    FourierMask,
    default_tv_config,
    radial_mask,
    sample_fourier,
    shepp_logan,
    tv_admm_reconstruct,
)
from shrinkcs.metainfo import Experiments
from shrinkcs.utils.checks import ConfigurationError

logger = logging.getLogger(__name__)

FULL_MASK = 0


def minimal_lines(table: pd.DataFrame) -> Dict[str, Optional[int]]:
    """Smallest successful radial line count per penalty, None when no count succeeds."""
    radial = table[table['lines'] > FULL_MASK]
    out = {}
    for name, group in radial.groupby('penalty', sort=False):
        succeeded = group.loc[group['success'], 'lines']
        out[name] = int(succeeded.min()) if len(succeeded) else None
    return out


@EXPERIMENTS.register_module(module_name=Experiments.phantom_sweep)
class PhantomSweep(Experiment):
    """
    Reconstruct the Shepp-Logan phantom from radial Fourier lines for every
    (penalty, line count) and record the relative error.

    grid:
        size (int): phantom size
        lines (list): radial line counts
        include_full (bool): also reconstruct from the full DFT (`lines` = 0 in the table)
        isotropic (bool): isotropic shrinkage of gradient pairs
        angle_offset (float): rotation of the first line in radians
    solver:
        `SolverConfig` overrides of `default_tv_config`; `rho_factor` sets ρ = factor·λ
    """

    def __init__(self, config: ExperimentConfig):
        super().__init__(config)
        self.penalties = config.require_penalties()
        self.size = config.int_range('size')[0]
        self.lines = sorted(set(config.int_range('lines')))
        if min(self.lines) < 1:
            raise ConfigurationError(f'line counts must be positive, got: {self.lines}')
        self.include_full = bool(config.grid.get('include_full', False))
        self.isotropic = bool(config.grid.get('isotropic', False))
        self.angle_offset = float(config.grid.get('angle_offset', 0.0))
        self.solver_overrides = dict(config.solver)
        self.rho_factor = self.solver_overrides.pop('rho_factor', None)
        self.image = shepp_logan(self.size)

    def solver_config(self, index: int):  # noqa: D102
        spec = self.penalties[index]
        overrides = dict(self.solver_overrides)
        if self.rho_factor is not None:
            overrides['admm_rho'] = float(self.rho_factor) * spec.lam
        return default_tv_config(spec, **overrides)

    def run_trial(self, task: Tuple[int, int]) -> Dict[str, Any]:
        """One reconstruction, `lines` = 0 for the full mask."""
        index, lines = task
        spec = self.penalties[index]
        if lines == FULL_MASK:
            mask = FourierMask.full(self.size)
        else:
            mask = radial_mask(self.size, lines, angle_offset=self.angle_offset)
        result = tv_admm_reconstruct(
            sample_fourier(self.image, mask),
            mask,
            spec,
            self.solver_config(index),
            isotropic=self.isotropic,
        )
        error = result.image.relative_error(self.image)
        logger.info('%s with %d lines: rel. error %.3e', spec.describe(), lines, error)
        return {
            'penalty_index': index,
            'penalty': spec.describe(),
            'lines': lines,
            'samples': mask.count,
            'sampling_ratio': mask.sampling_ratio,
            'error': error,
            'iterations': result.iterations,
            'termination': result.termination.value,
            'constraint_error': result.constraint_error,
            'success': error <= self.config.success_tol,
        }

    def run(self) -> pd.DataFrame:  # noqa: D102
        counts = ([FULL_MASK] if self.include_full else []) + self.lines
        tasks = [(index, lines) for index in range(len(self.penalties)) for lines in counts]
        records = map_trials(self.run_trial, tasks, self.config.workers, desc='phantom sweep')
        table = pd.DataFrame.from_records(records)
        table = table.sort_values(['penalty_index', 'lines'], kind='mergesort')
        return table.drop(columns='penalty_index').reset_index(drop=True)

    def summarize(self, table: pd.DataFrame) -> Dict[str, Any]:  # noqa: D102
        full = table[table['lines'] == FULL_MASK]
        return {
            'size': self.size,
            'minimal_lines': minimal_lines(table),
            'max_full_mask_error': float(np.max(full['error'])) if len(full) else None,
        }
