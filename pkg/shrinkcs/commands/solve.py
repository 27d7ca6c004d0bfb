# Copyright (c) The shrinkcs authors.
import argparse
import json
import logging
from typing import Optional

from shrinkcs.commands.subcommand import (
    Subcommand,
    add_common_arguments,
    add_penalty_arguments,
    load_config,
    penalty_from_args,
)
from shrinkcs.metainfo import Solvers
from shrinkcs.penalties import PenaltySpec
from shrinkcs.sensing import (
    SensingProblem,
    has_orthonormal_rows,
    orthonormalize_rows,
    read_problem_csv,
)
from shrinkcs.solvers import SolverConfig, SolverResult, build_solver
from shrinkcs.utils.file_utils import ensure_parent_dir, sidecar_path, write_json

logger = logging.getLogger(__name__)


def _add_solve_subparser(
    parser: argparse._SubParsersAction, name: str, solver: str, help_text: str
) -> argparse.ArgumentParser:
    subparser = parser.add_parser(name, help=help_text)
    add_common_arguments(subparser, config_help='config with `penalty` and `solver` sections')
    add_penalty_arguments(subparser)
    subparser.add_argument(
        '--problem', type=str, required=True, help='problem CSV, the augmented matrix [A | b]'
    )
    subparser.add_argument('--max-iters', type=int, default=None, help='iteration cap')
    subparser.set_defaults(func=solve_from_args, solver=solver)
    return subparser


class SolveIPS(Subcommand):
    """
    usage: shrinkcs solve-ips [-h] [--seed SEED] [-c CONFIG] [-o OUT] --problem PROBLEM
                              [--penalty PENALTY] [--family FAMILY] [--lambda LAM]
                              [--p P] [--mu MU] [--max-iters MAX_ITERS]

    Minimize λG(x) + ½‖Ax − b‖² by iterative shrinkage.
    """

    @classmethod
    def add_subparser(cls, parser: argparse._SubParsersAction) -> argparse.ArgumentParser:
        """Add solve-ips arguments parser"""
        return _add_solve_subparser(
            parser, 'solve-ips', Solvers.ips, help_text='iterative shrinkage on λG + ½‖Ax − b‖²'
        )


class SolveADMM(Subcommand):
    """
    usage: shrinkcs solve-admm [-h] [--seed SEED] [-c CONFIG] [-o OUT] --problem PROBLEM
                               [--penalty PENALTY] [--family FAMILY] [--lambda LAM]
                               [--p P] [--mu MU] [--max-iters MAX_ITERS]

    Minimize G(w) subject to Aw = b by ADMM, rows of A are orthonormalized first.
    """

    @classmethod
    def add_subparser(cls, parser: argparse._SubParsersAction) -> argparse.ArgumentParser:
        """Add solve-admm arguments parser"""
        return _add_solve_subparser(
            parser, 'solve-admm', Solvers.admm, help_text='ADMM on min G(w) s.t. Aw = b'
        )


def solve_from_args(args: argparse.Namespace):  # noqa: D103
    config = load_config(args.config)
    spec = penalty_from_args(args, config)
    solver_cfg = dict(config.safe_get('solver', {}))
    if args.max_iters is not None:
        solver_cfg['max_iters'] = args.max_iters
    result = solve_problem(
        read_problem_csv(args.problem), spec, args.solver, SolverConfig.from_config(solver_cfg)
    )
    if args.out:
        write_solver_result(args.out, result, spec)
    else:
        print(json.dumps(result.summary(), indent=2))


def solve_problem(
    problem: SensingProblem,
    spec: PenaltySpec,
    solver: str,
    config: Optional[SolverConfig] = None,
) -> SolverResult:
    """Run a registered solver, orthonormalizing the rows first for ADMM."""
    if solver == Solvers.admm and not (problem.rows_orthonormal or has_orthonormal_rows(problem.A)):
        logger.info('Orthonormalizing the rows of A for ADMM')
        problem = orthonormalize_rows(problem)
    return build_solver(solver, config).solve(problem, spec)


def write_solver_result(path: str, result: SolverResult, spec: PenaltySpec) -> str:
    """The trace table as CSV and the summary with the penalty as its JSON sidecar."""
    ensure_parent_dir(path)
    result.to_frame().to_csv(path, index=False)
    write_json(sidecar_path(path), {**result.summary(), 'penalty': spec.to_dict()})
    logger.info('Wrote the %s trace to %s', result.solver, path)
    return path
