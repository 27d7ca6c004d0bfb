# Copyright (c) The shrinkcs authors.
import argparse
import logging
import math
from typing import Optional

from shrinkcs.commands.subcommand import (
    Subcommand,
    add_common_arguments,
    add_penalty_arguments,
    penalty_from_args,
    run_experiment_from_args,
)
from shrinkcs.imaging import (
    ReconstructionResult,
    default_tv_config,
    radial_mask,
    sample_fourier,
    shepp_logan,
    tv_admm_reconstruct,
    write_image_csv,
    write_mask_csv,
    write_pgm,
)
from shrinkcs.metainfo import Experiments
from shrinkcs.penalties import PenaltySpec
from shrinkcs.utils.common_utils import make_rng
from shrinkcs.utils.file_utils import sidecar_path, write_json

logger = logging.getLogger(__name__)


class Phantom(Subcommand):
    """
    usage: shrinkcs phantom [-h] [--seed SEED] [-c CONFIG] [-o OUT] [--workers WORKERS]
                            [--size SIZE] [--lines LINES] [--angle-offset ANGLE_OFFSET]
                            [--isotropic] [--max-iters MAX_ITERS] [--mask-out MASK_OUT]
                            [--penalty PENALTY] [--family FAMILY] [--lambda LAM]
                            [--p P] [--mu MU]

    Reconstruct the Shepp-Logan phantom from radial Fourier lines. The image goes
    to --out (PGM preview for *.pgm, CSV otherwise). With a phantom-sweep --config
    the whole sweep is run instead.
    """

    @classmethod
    def add_subparser(cls, parser: argparse._SubParsersAction) -> argparse.ArgumentParser:
        """Add phantom arguments parser"""
        subparser = parser.add_parser('phantom', help='radial-line phantom reconstruction')
        add_common_arguments(subparser, config_help='phantom-sweep experiment config')
        add_penalty_arguments(subparser)
        subparser.add_argument('--workers', type=int, default=None, help='sweep threads')
        subparser.add_argument('--size', type=int, default=64, help='phantom size')
        subparser.add_argument('--lines', type=int, default=18, help='radial lines')
        subparser.add_argument(
            '--angle-offset', type=float, default=0.0, help='first line angle, radians'
        )
        subparser.add_argument(
            '--isotropic', action='store_true', help='shrink gradient magnitudes'
        )
        subparser.add_argument('--max-iters', type=int, default=None, help='ADMM iteration cap')
        subparser.add_argument('--mask-out', type=str, default=None, help='mask CSV output')
        subparser.set_defaults(func=phantom_from_args)
        return subparser


def phantom_from_args(args: argparse.Namespace):  # noqa: D103
    if args.config:
        run_experiment_from_args(args, Experiments.phantom_sweep)
        return
    angle_offset = args.angle_offset
    if args.seed is not None:
        # a seed rotates the line set by a random fraction of the line spacing
        angle_offset += make_rng(args.seed).uniform(0.0, math.pi / args.lines)
    result = reconstruct_phantom(
        penalty_from_args(args),
        size=args.size,
        lines=args.lines,
        angle_offset=angle_offset,
        isotropic=args.isotropic,
        max_iters=args.max_iters,
        out_path=args.out,
        mask_path=args.mask_out,
    )
    if not args.out:
        print(result.summary())


def reconstruct_phantom(
    spec: PenaltySpec,
    size: int = 64,
    lines: int = 18,
    angle_offset: float = 0.0,
    isotropic: bool = False,
    max_iters: Optional[int] = None,
    out_path: Optional[str] = None,
    mask_path: Optional[str] = None,
) -> ReconstructionResult:
    """Sample the phantom on radial lines, reconstruct it and write the outputs asked for."""
    image = shepp_logan(size)
    mask = radial_mask(size, lines, angle_offset=angle_offset)
    overrides = {} if max_iters is None else {'max_iters': max_iters}
    result = tv_admm_reconstruct(
        sample_fourier(image, mask),
        mask,
        spec,
        default_tv_config(spec, **overrides),
        isotropic=isotropic,
    )
    error = result.image.relative_error(image)
    logger.info(
        '%s, %d lines (%.2f%% of the frequencies): rel. error %.3e',
        spec.describe(),
        lines,
        100.0 * mask.sampling_ratio,
        error,
    )
    if out_path:
        if out_path.lower().endswith('.pgm'):
            write_pgm(out_path, result.image)
        else:
            write_image_csv(out_path, result.image)
        write_json(
            sidecar_path(out_path),
            {
                **result.summary(),
                'penalty': spec.to_dict(),
                'size': size,
                'lines': lines,
                'angle_offset': angle_offset,
                'sampling_ratio': mask.sampling_ratio,
                'relative_error': error,
            },
        )
    if mask_path:
        write_mask_csv(mask_path, mask)
    return result
