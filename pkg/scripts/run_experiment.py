# Copyright (c) The shrinkcs authors.
import argparse
import os
import sys

parent_folder = os.path.dirname(os.path.dirname(os.path.realpath(__file__)))
sys.path.append(parent_folder)

from shrinkcs.experiments import run_experiment  # noqa # isort:skip
from shrinkcs.utils.file_utils import ensure_parent_dir  # noqa # isort:skip
from shrinkcs.utils.logging import prepare_logging  # noqa # isort:skip


def main(args):
    """run an experiment config from args"""
    if args.output_path:
        prepare_logging(os.path.dirname(os.path.abspath(ensure_parent_dir(args.output_path))))
    _, summary = run_experiment(args.config_path, output_path=args.output_path, seed=args.seed)
    print(summary)


if __name__ == '__main__':
    parser = argparse.ArgumentParser('run_experiment.py')
    parser.add_argument(
        '-c', '--config_path', required=True, type=str, help='experiment JSON/YAML file'
    )
    parser.add_argument('-o', '--output_path', type=str, default=None, help='CSV output')
    parser.add_argument('--seed', type=int, default=None, help='overrides the config seed')

    args = parser.parse_args()
    main(args)
