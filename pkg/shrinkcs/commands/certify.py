# Copyright (c) The shrinkcs authors.
import argparse
import json
import logging
from typing import Any, Dict, Optional

import numpy as np

from shrinkcs.certificates import (
    alpha_beta,
    certify_stability,
    find_p_lambda,
    recovery_certificate,
    rnsp_check,
)
from shrinkcs.commands.subcommand import (
    Subcommand,
    add_common_arguments,
    add_penalty_arguments,
    load_config,
    penalty_from_args,
    run_experiment_from_args,
)
from shrinkcs.metainfo import Experiments
from shrinkcs.sensing import SensingProblem, read_problem_csv
from shrinkcs.utils.checks import ConfigurationError
from shrinkcs.utils.file_utils import read_vector_csv, write_json

logger = logging.getLogger(__name__)


class Certify(Subcommand):
    """
    usage: shrinkcs certify [-h] [--seed SEED] [-c CONFIG] [-o OUT] [--problem PROBLEM]
                            [--k K] [--search] [--x X] [--epsilon EPSILON]
                            [--penalty PENALTY] [--family FAMILY] [--lambda LAM]
                            [--p P] [--mu MU]

    Exact-recovery certificate of a problem for a penalty (or the p-shrinkage
    parameter search with --search). With --x and --epsilon the stability
    certificate of x is issued instead. With an experiment --config the
    certify sweep is run.
    """

    @classmethod
    def add_subparser(cls, parser: argparse._SubParsersAction) -> argparse.ArgumentParser:
        """Add certify arguments parser"""
        subparser = parser.add_parser('certify', help='recovery and stability certificates')
        add_common_arguments(subparser, config_help='certify-sweep experiment config')
        add_penalty_arguments(subparser)
        subparser.add_argument('--problem', type=str, default=None, help='problem CSV [A | b]')
        subparser.add_argument('--k', type=int, default=None, help='sparsity, default m // 2')
        subparser.add_argument(
            '--search', action='store_true', help='search a certified p-shrinkage (p, λ)'
        )
        subparser.add_argument('--x', type=str, default=None, help='target vector CSV')
        subparser.add_argument('--epsilon', type=float, default=None, help='noise level ε')
        subparser.set_defaults(func=certify_from_args)
        return subparser


def certify_from_args(args: argparse.Namespace):  # noqa: D103
    if args.config and args.problem is None:
        run_experiment_from_args(args, Experiments.certify_sweep)
        return
    if args.problem is None:
        raise ConfigurationError('certify needs --problem (or an experiment --config)')
    problem = read_problem_csv(args.problem)
    x = None if args.x is None else read_vector_csv(args.x)
    if args.epsilon is not None:
        if x is None:
            raise ConfigurationError('the stability certificate needs --x')
        spec = penalty_from_args(args, load_config(args.config))
        payload = stability_payload(problem, spec, x, args.epsilon, args.k)
    else:
        spec = None if args.search else penalty_from_args(args, load_config(args.config))
        payload = recovery_payload(problem, spec, args.k, x)

    if args.out:
        write_json(args.out, payload)
        logger.info('Wrote the certificate to %s', args.out)
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


def recovery_payload(
    problem: SensingProblem, spec, k: Optional[int] = None, x: Optional[np.ndarray] = None
) -> Dict[str, Any]:
    """Recovery certificate as a dict; `spec=None` runs the (p, λ) search."""
    k = problem.m // 2 if k is None else k
    if spec is None:
        alpha, beta = alpha_beta(problem)
        cert = find_p_lambda(alpha, beta, problem.m, k)
    else:
        cert = recovery_certificate(spec, problem, k)
    payload = cert.to_dict()
    if x is not None:
        payload['rnsp'] = rnsp_check(cert.spec, problem, x)
    return payload


def stability_payload(
    problem: SensingProblem, spec, x: np.ndarray, epsilon: float, k: Optional[int] = None
) -> Dict[str, Any]:
    """Stability certificate of x on its k largest entries (its nonzeros by default)."""
    k = int(np.count_nonzero(x)) if k is None else k
    if not 1 <= k <= x.size:
        raise ConfigurationError(f'k must lie in [1, {x.size}], got: {k}')
    support = np.sort(np.argsort(-np.abs(x), kind='stable')[:k])
    return certify_stability(problem, spec, x, support, epsilon=epsilon).to_dict()
