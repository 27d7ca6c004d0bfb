# Copyright (c) The shrinkcs authors.
import argparse
import os
from abc import ABC, abstractmethod
from typing import Optional

from modelscope.utils.config import Config

from shrinkcs.experiments import ExperimentConfig, run_experiment
from shrinkcs.metainfo import Penalties, get_member_set
from shrinkcs.penalties import PenaltySpec
from shrinkcs.utils.checks import ConfigurationError
from shrinkcs.utils.file_utils import ensure_parent_dir
from shrinkcs.utils.logging import prepare_logging


class Subcommand(ABC):
    """Abstract class for subcommands"""

    @classmethod
    @abstractmethod
    def add_subparser(cls, parser: argparse._SubParsersAction) -> argparse.ArgumentParser:
        """Add arguments parser for subcommand"""
        pass


def add_common_arguments(subparser: argparse.ArgumentParser, config_help: str) -> None:
    """`--seed`, `--config` and `--out`, shared by every subcommand."""
    subparser.add_argument('--seed', type=int, default=None, help='random seed')
    subparser.add_argument('-c', '--config', type=str, default=None, help=config_help)
    subparser.add_argument('-o', '--out', type=str, default=None, help='output file')


def add_penalty_arguments(subparser: argparse.ArgumentParser) -> None:
    """Either a penalty file (`--penalty`) or the family and its parameters."""
    subparser.add_argument(
        '--penalty', type=str, default=None, help='penalty JSON/YAML, e.g. {"type": "firm", ...}'
    )
    subparser.add_argument(
        '--family', type=str, default=None, choices=sorted(get_member_set(Penalties))
    )
    subparser.add_argument('--lambda', dest='lam', type=float, default=None, help='threshold λ')
    subparser.add_argument('--p', type=float, default=None, help='p-shrinkage exponent')
    subparser.add_argument('--mu', type=float, default=None, help='firm cutoff μ')


def load_config(path: Optional[str]) -> Config:
    """The `--config` file, an empty config when not given."""
    return Config.from_file(path) if path else Config({})


def penalty_from_args(args: argparse.Namespace, config: Optional[Config] = None) -> PenaltySpec:
    """The penalty of a command: `--family` flags, then `--penalty`, then `config.penalty`."""
    if args.family is not None:
        cfg = {'type': args.family, 'lambda': 1.0 if args.lam is None else args.lam}
        if args.p is not None:
            cfg['p'] = args.p
        if args.mu is not None:
            cfg['mu'] = args.mu
        return PenaltySpec.from_config(cfg)
    if args.lam is not None or args.p is not None or args.mu is not None:
        raise ConfigurationError('penalty parameter flags need --family')
    if args.penalty:
        return PenaltySpec.from_config(Config.from_file(args.penalty))
    if config is not None and config.safe_get('penalty') is not None:
        return PenaltySpec.from_config(config.safe_get('penalty'))
    raise ConfigurationError('no penalty given, use --family or --penalty')


def run_experiment_from_args(args: argparse.Namespace, kind: str):
    """Load the config, apply the command line overrides and run it, logging next to the CSV."""
    config = ExperimentConfig.from_config(args.config)
    if config.kind != kind:
        raise ConfigurationError(f'expected a {kind} config, got kind={config.kind}')
    overrides = {
        'seed': args.seed,
        'workers': getattr(args, 'workers', None),
        'output_path': args.out,
    }
    overrides = {key: value for key, value in overrides.items() if value is not None}
    config = ExperimentConfig.from_config({**config.to_dict(), **overrides})
    if config.output_path:
        ensure_parent_dir(config.output_path)
        prepare_logging(os.path.dirname(os.path.abspath(config.output_path)))
    return run_experiment(config)
