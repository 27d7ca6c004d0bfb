# Copyright (c) The shrinkcs authors.
import argparse
import logging
from typing import Optional

import numpy as np

from shrinkcs.commands.subcommand import (
    Subcommand,
    add_common_arguments,
    add_penalty_arguments,
    load_config,
    penalty_from_args,
)
from shrinkcs.penalties import PenaltySpec, apply_shrinkage
from shrinkcs.utils.checks import ConfigurationError
from shrinkcs.utils.file_utils import read_vector_csv, write_matrix_csv

logger = logging.getLogger(__name__)


class Shrink(Subcommand):
    """
    usage: shrinkcs shrink [-h] [--seed SEED] [-c CONFIG] [-o OUT] --in IN_PATH
                           [--penalty PENALTY] [--family FAMILY] [--lambda LAM]
                           [--p P] [--mu MU]

    Apply a shrinkage elementwise to a vector CSV.
    """

    @classmethod
    def add_subparser(cls, parser: argparse._SubParsersAction) -> argparse.ArgumentParser:
        """Add shrink arguments parser"""
        subparser = parser.add_parser('shrink', help='apply a shrinkage to a vector')
        add_common_arguments(subparser, config_help='config with a `penalty` section')
        add_penalty_arguments(subparser)
        subparser.add_argument(
            '--in', dest='in_path', type=str, required=True, help='input vector CSV'
        )
        subparser.set_defaults(func=shrink_from_args)
        return subparser


def shrink_from_args(args: argparse.Namespace):  # noqa: D103
    spec = penalty_from_args(args, load_config(args.config))
    shrink_file(spec, args.in_path, args.out)


def shrink_file(spec: PenaltySpec, in_path: str, out_path: Optional[str]) -> np.ndarray:
    """Read a vector, shrink it and write the result (one value per line)."""
    if not out_path:
        raise ConfigurationError('shrink needs --out')
    x = read_vector_csv(in_path)
    y = apply_shrinkage(spec, x)
    write_matrix_csv(out_path, y)
    logger.info(
        '%s applied to %d entries, %d nonzero', spec.describe(), x.size, np.count_nonzero(y)
    )
    return y
