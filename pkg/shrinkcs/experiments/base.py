# Copyright (c) The shrinkcs authors.
import logging
import os
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np
import pandas as pd
from modelscope.utils.config import Config
from modelscope.utils.registry import Registry, build_from_cfg
from tqdm import tqdm

from shrinkcs.experiments.config import ExperimentConfig
from shrinkcs.utils.file_utils import ensure_parent_dir, sidecar_path, write_json, write_yaml
from shrinkcs.version import __version__

logger = logging.getLogger(__name__)

EXPERIMENTS = Registry('experiments')

T = TypeVar('T')


def relative_error(estimate: np.ndarray, reference: np.ndarray) -> float:
    """‖estimate − reference‖ / ‖reference‖, the absolute error when reference = 0."""
    diff = float(np.linalg.norm(np.asarray(estimate) - np.asarray(reference)))
    norm = float(np.linalg.norm(reference))
    return diff / norm if norm > 0 else diff


def map_trials(
    fn: Callable[[T], Dict[str, Any]], tasks: Sequence[T], workers: int = 1, desc: str = ''
) -> List[Dict[str, Any]]:
    """Run `fn` on every task, results in task order whatever the number of workers."""
    with tqdm(total=len(tasks), desc=desc, disable=None) as progress:
        if workers <= 1:
            records = []
            for task in tasks:
                records.append(fn(task))
                progress.update(1)
            return records
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(fn, task) for task in tasks]
            records = []
            for future in futures:
                records.append(future.result())
                progress.update(1)
            return records


class Experiment(ABC):
    """
    The experiment base class. An experiment is built from the registry by its
    `kind` and turns its config into one table.
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config

    @abstractmethod
    def run(self) -> pd.DataFrame:
        """Run all trials and return the result table."""
        raise NotImplementedError

    def summarize(self, table: pd.DataFrame) -> Dict[str, Any]:
        """Headline numbers stored in the JSON sidecar."""
        return {}


def build_experiment(config: Union[ExperimentConfig, Dict, Config, str]) -> Experiment:
    """Build the registered experiment of a config (or config file)."""
    config = ExperimentConfig.from_config(config)
    return build_from_cfg(
        dict(type=config.kind), EXPERIMENTS, group_key='default', default_args=dict(config=config)
    )


def write_table(
    table: pd.DataFrame, path: str, config: ExperimentConfig, summary: Dict[str, Any]
) -> Tuple[str, str]:
    """Write `table` as CSV and `<path>.json` with the resolved config and the version;
    the config alone also goes to `<path>.config.yaml` so it can be re-run."""
    ensure_parent_dir(path)
    table.to_csv(path, index=False)
    meta = write_json(
        sidecar_path(path),
        {'config': config.to_dict(), 'summary': summary, 'version': __version__},
    )
    write_yaml(os.path.splitext(path)[0] + '.config.yaml', config.to_dict())
    logger.info('Wrote %d rows to %s (sidecar %s)', len(table), path, meta)
    return path, meta


def run_experiment(
    config: Union[ExperimentConfig, Dict, Config, str],
    output_path: Optional[str] = None,
    seed: Optional[int] = None,
) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """Build, run and (when an output path is known) write an experiment.

    Args:
        config: an `ExperimentConfig`, a config dict or a JSON/YAML path
        output_path (str): overrides `config.output_path`
        seed (int): overrides `config.seed`

    Returns:
        Tuple[pd.DataFrame, Dict]: the table and its summary
    """
    config = ExperimentConfig.from_config(config)
    if seed is not None:
        config = ExperimentConfig.from_config({**config.to_dict(), 'seed': seed})
    if output_path is not None:
        config.output_path = output_path

    experiment = build_experiment(config)
    logger.info(
        'Running %s with seed %d and %d worker(s)', config.kind, config.seed, config.workers
    )
    table = experiment.run()
    summary = experiment.summarize(table)
    if config.output_path:
        write_table(table, config.output_path, config, summary)
    return table, summary
