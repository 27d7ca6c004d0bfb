# Copyright (c) The shrinkcs authors.
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

from modelscope.utils.config import Config

from shrinkcs.metainfo import Experiments, get_member_set
from shrinkcs.penalties import PenaltySpec
from shrinkcs.utils.checks import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_SUCCESS_TOL = 1e-3


@dataclass
class ExperimentConfig:
    """
    A resolved experiment configuration.

    Args:
        kind (str): one of `Experiments` (`phase-diagram`, `phantom-sweep`, `certify-sweep`)
        grid (Dict): parameter ranges of the experiment, e.g. `m`, `k`, `lines`;
            a range is a list of integers or `{'start': .., 'stop': .., 'step': ..}`
            with `stop` included
        penalties (List[PenaltySpec]): penalties to compare
        trials (int): trials per grid cell, >= 1
        seed (int): root seed, every trial derives its own stream from it
        success_tol (float): a trial succeeds when the relative error is <= success_tol
        output_path (str): CSV destination, the JSON sidecar goes next to it
        workers (int): threads running trials, never changes the results
        solver (Dict): `SolverConfig` overrides for the solver the experiment runs
    """

    kind: str
    grid: Dict[str, Any] = field(default_factory=dict)
    penalties: List[PenaltySpec] = field(default_factory=list)
    trials: int = 1
    seed: int = 0
    success_tol: float = DEFAULT_SUCCESS_TOL
    output_path: Optional[str] = None
    workers: int = 1
    solver: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in get_member_set(Experiments):
            raise ConfigurationError(
                f'Unknown experiment kind: {self.kind}, '
                f'expected one of {sorted(get_member_set(Experiments))}'
            )
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigurationError(f'trials must be a positive integer, got: {self.trials}')
        if int(self.seed) != self.seed or self.seed < 0:
            raise ConfigurationError(f'random seed must be a nonnegative integer, got: {self.seed}')
        if not self.success_tol > 0:
            raise ConfigurationError(f'success_tol must be positive, got: {self.success_tol}')
        if int(self.workers) != self.workers or self.workers < 1:
            raise ConfigurationError(f'workers must be a positive integer, got: {self.workers}')
        self.trials, self.seed, self.workers = int(self.trials), int(self.seed), int(self.workers)
        self.penalties = [PenaltySpec.from_config(p) for p in self.penalties]

    @classmethod
    def from_config(cls, cfg: Union[str, Dict, Config]) -> 'ExperimentConfig':
        """Build from a JSON/YAML file path, a dict or a modelscope `Config`.

        The top-level keys are the fields of this class; `type` is accepted as an
        alias of `kind`.
        """
        if isinstance(cfg, ExperimentConfig):
            return cfg
        if isinstance(cfg, str):
            cfg = Config.from_file(cfg)
        elif not isinstance(cfg, Config):
            cfg = Config(dict(cfg))

        kind = cfg.safe_get('kind', cfg.safe_get('type'))
        if kind is None:
            raise ConfigurationError('experiment config needs a `kind`')
        known = {'kind', 'type', 'grid', 'penalties', 'trials', 'seed', 'success_tol'}
        known |= {'output_path', 'workers', 'solver'}
        unknown = sorted(set(cfg.to_dict()) - known)
        if unknown:
            raise ConfigurationError(f'Unknown experiment config keys: {unknown}')

        grid = cfg.safe_get('grid', {})
        solver = cfg.safe_get('solver', {})
        penalties = cfg.safe_get('penalties', [])
        return cls(
            kind=kind,
            grid=_plain(grid),
            penalties=[_plain(p) for p in penalties],
            trials=cfg.safe_get('trials', 1),
            seed=cfg.safe_get('seed', 0),
            success_tol=float(cfg.safe_get('success_tol', DEFAULT_SUCCESS_TOL)),
            output_path=cfg.safe_get('output_path'),
            workers=cfg.safe_get('workers', 1),
            solver=_plain(solver),
        )

    def to_dict(self) -> Dict[str, Any]:  # noqa: D102
        return {
            'kind': self.kind,
            'grid': dict(self.grid),
            'penalties': [p.to_dict() for p in self.penalties],
            'trials': self.trials,
            'seed': self.seed,
            'success_tol': self.success_tol,
            'output_path': self.output_path,
            'workers': self.workers,
            'solver': dict(self.solver),
        }

    def int_range(self, key: str, default: Optional[List[int]] = None) -> List[int]:
        """The integer values of the grid entry `key`, nonempty."""
        value = self.grid.get(key, default)
        if value is None:
            raise ConfigurationError(f'{self.kind} needs `grid.{key}`')
        if isinstance(value, dict):
            try:
                start, stop = int(value['start']), int(value['stop'])
            except KeyError as e:
                raise ConfigurationError(f'grid.{key} range needs start and stop') from e
            step = int(value.get('step', 1))
            if step < 1:
                raise ConfigurationError(f'grid.{key} step must be positive, got: {step}')
            values = list(range(start, stop + 1, step))
        elif isinstance(value, (list, tuple)):
            values = [int(v) for v in value]
        else:
            values = [int(value)]
        if not values:
            raise ConfigurationError(f'grid.{key} is empty: {value}')
        return values

    def require_penalties(self) -> List[PenaltySpec]:  # noqa: D102
        if not self.penalties:
            raise ConfigurationError(f'{self.kind} needs at least one entry in `penalties`')
        return self.penalties


def _plain(value):
    if isinstance(value, Config):
        return value.to_dict()
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value
