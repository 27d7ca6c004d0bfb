# Copyright (c) The shrinkcs authors.
import argparse
import logging
import sys
from typing import List, Optional, Tuple

from shrinkcs.commands.certify import Certify
from shrinkcs.commands.penalty_eval import PenaltyEval
from shrinkcs.commands.phantom import Phantom
from shrinkcs.commands.phase_diagram import PhaseDiagram
from shrinkcs.commands.shrink import Shrink
from shrinkcs.commands.solve import SolveADMM, SolveIPS
from shrinkcs.utils.checks import (
    BudgetExceededError,
    CertificateError,
    ConfigurationError,
    InvalidInputError,
    NumericalError,
)
from shrinkcs.version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2


class UsageError(Exception):
    """Raised by the argument parser instead of exiting."""


class ArgumentParser(argparse.ArgumentParser):
    """An `argparse.ArgumentParser` whose usage errors map to exit code 1."""

    def error(self, message: str):  # noqa: D102
        self.print_usage(sys.stderr)
        sys.stderr.write(f'{self.prog}: error: {message}\n')
        raise UsageError(message)


def parse_args(  # noqa: D103
    argv: Optional[List[str]] = None,
    prog: Optional[str] = None,
) -> Tuple[argparse.ArgumentParser, argparse.Namespace]:
    parser = ArgumentParser(prog=prog)
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')

    subparsers = parser.add_subparsers(help='commands', parser_class=ArgumentParser)
    for subcommand in (Shrink, PenaltyEval, SolveIPS, SolveADMM, Certify, PhaseDiagram, Phantom):
        subcommand.add_subparser(subparsers)

    args = parser.parse_args(argv)

    return parser, args


def main(argv: Optional[List[str]] = None, prog: Optional[str] = None) -> int:
    """Run a subcommand and return the exit code.

    0 on success, 1 for usage and configuration errors or invalid input,
    2 for numerical, budget and certificate failures.
    """
    try:
        parser, args = parse_args(argv, prog)
    except UsageError:
        return EXIT_USAGE

    if 'func' not in dir(args):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        args.func(args)
    except (ConfigurationError, InvalidInputError) as e:
        logger.error('%s: %s', type(e).__name__, e.message)
        return EXIT_USAGE
    except (NumericalError, BudgetExceededError, CertificateError) as e:
        logger.error('%s: %s', type(e).__name__, e.message)
        return EXIT_NUMERIC
    except OSError as e:
        logger.error('I/O error: %s', e)
        return EXIT_USAGE
    return EXIT_OK
