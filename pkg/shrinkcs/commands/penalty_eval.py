# Copyright (c) The shrinkcs authors.
import argparse
import logging

import numpy as np
import pandas as pd

from shrinkcs.commands.subcommand import (
    Subcommand,
    add_common_arguments,
    add_penalty_arguments,
    load_config,
    penalty_from_args,
)
from shrinkcs.penalties import PenaltySpec, build_penalty
from shrinkcs.utils.checks import ConfigurationError, check_finite
from shrinkcs.utils.file_utils import ensure_parent_dir, read_vector_csv

logger = logging.getLogger(__name__)


class PenaltyEval(Subcommand):
    """
    usage: shrinkcs penalty-eval [-h] [--seed SEED] [-c CONFIG] [-o OUT]
                                 [--penalty PENALTY] [--family FAMILY] [--lambda LAM]
                                 [--p P] [--mu MU] [--in IN_PATH]
                                 [--w-min W_MIN] [--w-max W_MAX] [--num NUM]

    Tabulate w, g(w) and g'(w) of the penalty induced by a shrinkage, on the
    points of `--in` or on an even grid.
    """

    @classmethod
    def add_subparser(cls, parser: argparse._SubParsersAction) -> argparse.ArgumentParser:
        """Add penalty-eval arguments parser"""
        subparser = parser.add_parser('penalty-eval', help='tabulate an induced penalty')
        add_common_arguments(subparser, config_help='config with a `penalty` section')
        add_penalty_arguments(subparser)
        subparser.add_argument('--in', dest='in_path', default=None, help='points w, vector CSV')
        subparser.add_argument('--w-min', type=float, default=-5.0, help='grid start')
        subparser.add_argument('--w-max', type=float, default=5.0, help='grid end')
        subparser.add_argument('--num', type=int, default=101, help='grid points')
        subparser.set_defaults(func=penalty_eval_from_args)
        return subparser


def penalty_eval_from_args(args: argparse.Namespace):  # noqa: D103
    spec = penalty_from_args(args, load_config(args.config))
    if args.in_path:
        w = read_vector_csv(args.in_path)
    else:
        if args.num < 2 or not args.w_max > args.w_min:
            raise ConfigurationError(
                f'need --num >= 2 and --w-max > --w-min, got {args.num}, {args.w_min}, {args.w_max}'
            )
        w = np.linspace(args.w_min, args.w_max, args.num)
    table = penalty_table(spec, w)
    if args.out:
        ensure_parent_dir(args.out)
        table.to_csv(args.out, index=False, float_format='%.17g')
        logger.info('Wrote %d penalty values to %s', len(table), args.out)
    else:
        print(table.to_csv(index=False))


def penalty_table(spec: PenaltySpec, w) -> pd.DataFrame:
    """Columns w, g (penalty value) and dg (signed derivative, 0 at w = 0)."""
    w = check_finite(w, 'w').reshape(-1)
    penalty = build_penalty(spec)
    return pd.DataFrame({'w': w, 'g': penalty.value(w), 'dg': penalty.derivative(w)})
