# Copyright (c) The shrinkcs authors.
import argparse

from shrinkcs.commands.subcommand import (
    Subcommand,
    add_common_arguments,
    run_experiment_from_args,
)
from shrinkcs.metainfo import Experiments
from shrinkcs.utils.checks import ConfigurationError


class PhaseDiagram(Subcommand):
    """
    usage: shrinkcs phase-diagram [-h] [--seed SEED] -c CONFIG [-o OUT] [--workers WORKERS]

    Recovery rates over (m, k) for the penalties of a phase-diagram config,
    written as CSV with a JSON sidecar.
    """

    @classmethod
    def add_subparser(cls, parser: argparse._SubParsersAction) -> argparse.ArgumentParser:
        """Add phase-diagram arguments parser"""
        subparser = parser.add_parser('phase-diagram', help='empirical recovery rates')
        add_common_arguments(subparser, config_help='phase-diagram experiment config')
        subparser.add_argument('--workers', type=int, default=None, help='trial threads')
        subparser.set_defaults(func=phase_diagram_from_args)
        return subparser


def phase_diagram_from_args(args: argparse.Namespace):  # noqa: D103
    if not args.config:
        raise ConfigurationError('phase-diagram needs --config')
    run_experiment_from_args(args, Experiments.phase_diagram)
