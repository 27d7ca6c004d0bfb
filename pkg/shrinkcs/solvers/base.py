# Copyright (c) The shrinkcs authors.
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, fields
from enum import Enum
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd
from modelscope.utils.config import Config
from modelscope.utils.registry import Registry, build_from_cfg

from shrinkcs.penalties import PenaltySpec
from shrinkcs.sensing import SensingProblem
from shrinkcs.utils.checks import ConfigurationError, check_finite

logger = logging.getLogger(__name__)

SOLVERS = Registry('solvers')

INIT_ZERO = 'zero'
INIT_CUSTOM = 'custom'
INIT_L1 = 'l1'


class Termination(str, Enum):
    """Why a solver stopped."""

    converged = 'converged'
    max_iters = 'max-iters'
    fixed_point = 'fixed-point'


@dataclass
class SolverConfig:
    """
    Iteration control shared by the solvers.

    Args:
        max_iters (int): iteration cap, >= 1
        step_tol (float): stop once ‖x^{n+1} − x^n‖₂ <= step_tol
            (for ADMM: primal and dual residuals <= step_tol)
        objective_trace (bool): record the objective after every iteration
        admm_rho (float): ADMM penalty parameter ρ > 0
        init (str): `zero`, `custom` (start at `x0`) or `l1` (ADMM only:
            warm start from the soft-threshold solution)
        x0 (np.ndarray): start point for `init='custom'`
        rescale (bool): IPS only, rescale A and b so that ‖A‖ < 1 when needed
        stationarity_tol (float): stationarity residual required on top of `step_tol`
        record_iterates (bool): keep every iterate in the result
    """

    max_iters: int = 10000
    step_tol: float = 1e-10
    objective_trace: bool = True
    admm_rho: float = 1.0
    init: str = INIT_ZERO
    x0: Optional[np.ndarray] = None
    rescale: bool = False
    stationarity_tol: float = 1e-8
    record_iterates: bool = False

    def __post_init__(self):
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ConfigurationError(f'max_iters must be a positive integer, got: {self.max_iters}')
        self.max_iters = int(self.max_iters)
        if not np.isfinite(self.step_tol) or self.step_tol < 0:
            raise ConfigurationError(f'step_tol must be nonnegative, got: {self.step_tol}')
        if not np.isfinite(self.admm_rho) or self.admm_rho <= 0:
            raise ConfigurationError(f'admm_rho must be positive, got: {self.admm_rho}')
        if self.init not in (INIT_ZERO, INIT_CUSTOM, INIT_L1):
            raise ConfigurationError(
                f'init must be one of {INIT_ZERO}, {INIT_CUSTOM}, {INIT_L1}, got: {self.init}'
            )
        if self.init == INIT_CUSTOM:
            if self.x0 is None:
                raise ConfigurationError('init=custom needs x0')
            self.x0 = check_finite(self.x0, 'x0').reshape(-1)
        elif self.x0 is not None:
            raise ConfigurationError(f'x0 is only used with init=custom, got init={self.init}')

    @classmethod
    def from_config(cls, cfg: Union[Dict, Config, 'SolverConfig', None]) -> 'SolverConfig':
        """Build from a dict or a `solver` config section; unknown keys are errors."""
        if cfg is None:
            return cls()
        if isinstance(cfg, SolverConfig):
            return cfg
        if isinstance(cfg, Config):
            cfg = cfg.to_dict()
        cfg = dict(cfg)
        cfg.pop('type', None)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(cfg) - known)
        if unknown:
            raise ConfigurationError(f'Unknown solver config keys: {unknown}')
        return cls(**cfg)

    def to_dict(self) -> Dict[str, Any]:  # noqa: D102
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        if out['x0'] is not None:
            out['x0'] = out['x0'].tolist()
        return out


@dataclass(eq=False)
class SolverResult:
    """
    Output of a solver run.

    `objective_trace` and `residual_trace` start with the value at the initial point,
    `step_diffs[i]` is the step taken by iteration i + 1.
    """

    x_final: np.ndarray
    objective_trace: List[float]
    step_diffs: List[float]
    stationarity_residual: float
    iterations: int
    termination: Termination
    residual_trace: List[float] = field(default_factory=list)
    iterates: Optional[List[np.ndarray]] = None
    scale: float = 1.0
    solver: str = ''

    @property
    def converged(self) -> bool:  # noqa: D102
        return self.termination != Termination.max_iters

    def to_frame(self) -> pd.DataFrame:
        """Trace table with columns iter, objective, step_diff, residual."""
        rows = max(len(self.objective_trace), len(self.residual_trace), len(self.step_diffs) + 1)

        def pad(values: List[float], offset: int = 0) -> List[float]:
            values = [np.nan] * offset + list(values)
            return values + [np.nan] * (rows - len(values))

        return pd.DataFrame(
            {
                'iter': np.arange(rows),
                'objective': pad(self.objective_trace),
                'step_diff': pad(self.step_diffs, offset=1),
                'residual': pad(self.residual_trace),
            }
        )

    def summary(self) -> Dict[str, Any]:  # noqa: D102
        return {
            'solver': self.solver,
            'termination': self.termination.value,
            'iterations': self.iterations,
            'stationarity_residual': self.stationarity_residual,
            'objective': self.objective_trace[-1] if self.objective_trace else None,
            'scale': self.scale,
            'x_final': self.x_final.tolist(),
        }


def initial_point(problem: SensingProblem, config: SolverConfig) -> np.ndarray:
    """x⁰ for `zero` and `custom` initialization."""
    if config.init == INIT_CUSTOM:
        if config.x0.shape[0] != problem.n:
            raise ConfigurationError(
                f'x0 has length {config.x0.shape[0]}, A has {problem.n} columns'
            )
        return config.x0.copy()
    return np.zeros(problem.n)


class Solver(ABC):
    """
    The solver base class, a solver is built from the registry by name and
    holds its `SolverConfig`.
    """

    def __init__(self, config: Optional[SolverConfig] = None):
        self.config = SolverConfig.from_config(config)

    @abstractmethod
    def solve(self, problem: SensingProblem, spec: PenaltySpec) -> SolverResult:
        """Run the solver on a problem with a penalty."""
        raise NotImplementedError


def build_solver(name: str, config: Union[SolverConfig, Dict, None] = None) -> Solver:
    """Build a registered solver (`ips` or `admm`) with its config."""
    return build_from_cfg(
        dict(type=name), SOLVERS, group_key='default', default_args=dict(config=config)
    )
