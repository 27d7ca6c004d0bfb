# Copyright (c) The shrinkcs authors.
"""
ADMM for min G(∇x) subject to (Fx)_k = b_k on the sampled frequencies k, with
the split z = ∇x and scaled dual u:

    x ← argmin ‖∇x − z + u‖² over {x : (Fx)_Ω = b}
    z ← S_{λ/ρ}(∇x + u)
    u ← u + ∇x − z

The periodic gradient makes ∇ᵀ∇ diagonal in the DFT basis, so the x-step sets
the sampled frequencies to the data and divides the others by the eigenvalues
of ∇ᵀ∇ (nonzero off DC, and DC is always sampled).
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from shrinkcs.imaging.operators import dft2, div, grad, gradient_eigenvalues, idft2
from shrinkcs.imaging.phantom import ImageGrid
from shrinkcs.imaging.sampling import FourierMask
from shrinkcs.penalties import PenaltySpec, build_penalty
from shrinkcs.solvers import SolverConfig, Termination
from shrinkcs.utils.checks import ConfigurationError, InvalidInputError

logger = logging.getLogger(__name__)

DEFAULT_RHO_FACTOR = 10.0
DEFAULT_MAX_ITERS = 5000
DEFAULT_STEP_TOL = 1e-8
LOG_EVERY = 100


@dataclass(eq=False)
class ReconstructionResult:
    """
    Output of a TV-type ADMM reconstruction.

    Args:
        image (ImageGrid): the real part of the final iterate
        iterations (int): ADMM iterations run
        termination (Termination): why the loop stopped
        primal_trace (List[float]): RMS of ∇x − z per iteration
        dual_trace (List[float]): RMS of ρ(z − z_prev) per iteration
        constraint_error (float): max |(Fx)_k − b_k| over the sampled k
        max_imag (float): largest imaginary part discarded from the final iterate
    """

    image: ImageGrid
    iterations: int
    termination: Termination
    primal_trace: List[float] = field(default_factory=list)
    dual_trace: List[float] = field(default_factory=list)
    constraint_error: float = 0.0
    max_imag: float = 0.0

    def to_frame(self) -> pd.DataFrame:  # noqa: D102
        return pd.DataFrame(
            {
                'iter': np.arange(1, len(self.primal_trace) + 1),
                'primal': self.primal_trace,
                'dual': self.dual_trace,
            }
        )

    def summary(self) -> Dict[str, Any]:  # noqa: D102
        return {
            'iterations': self.iterations,
            'termination': self.termination.value,
            'constraint_error': self.constraint_error,
            'max_imag': self.max_imag,
            'final_primal': self.primal_trace[-1] if self.primal_trace else None,
        }


def default_tv_config(spec: PenaltySpec, **overrides) -> SolverConfig:
    """ρ = 10λ, 5000 iterations and an RMS residual tolerance of 1e-8."""
    values = dict(
        admm_rho=DEFAULT_RHO_FACTOR * spec.lam,
        max_iters=DEFAULT_MAX_ITERS,
        step_tol=DEFAULT_STEP_TOL,
        objective_trace=False,
    )
    values.update(overrides)
    return SolverConfig(**values)


def _pair_shrinkage(shrink, isotropic: bool):
    if not isotropic:
        return lambda vx, vy: (shrink(vx), shrink(vy))

    def grouped(vx: np.ndarray, vy: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        magnitude = np.hypot(vx, vy)
        shrunk = shrink(magnitude)
        factor = np.divide(shrunk, magnitude, out=np.zeros_like(magnitude), where=magnitude > 0)
        return factor * vx, factor * vy

    return grouped


def tv_admm_reconstruct(
    data: np.ndarray,
    mask: FourierMask,
    spec: PenaltySpec,
    config: Optional[SolverConfig] = None,
    isotropic: bool = False,
) -> ReconstructionResult:
    """Reconstruct an image from DFT samples by minimizing G(∇x).

    Args:
        data (np.ndarray): size x size complex array, read on `mask` only
            (see `sample_fourier`)
        mask (FourierMask): sampled frequencies, must contain DC
        spec (PenaltySpec): the penalty G, the z-step uses `spec.scale_threshold(1 / ρ)`
        config (SolverConfig): `admm_rho`, `max_iters` and `step_tol` (applied to the
            RMS primal and dual residuals); defaults to :func:`default_tv_config`
        isotropic (bool): shrink the magnitude of each (gx, gy) pair instead of
            each component

    Returns:
        ReconstructionResult: the image and its convergence record
    """
    spec = PenaltySpec.from_config(spec)
    config = default_tv_config(spec) if config is None else SolverConfig.from_config(config)
    data = np.asarray(data, dtype=np.complex128)
    if data.shape != mask.sampled.shape:
        raise InvalidInputError(f'data {data.shape} does not match mask {mask.sampled.shape}')
    if not np.all(np.isfinite(data[mask.sampled])):
        raise InvalidInputError('data must be finite on the mask')
    if not mask.sampled[0, 0]:
        raise ConfigurationError('the mask must contain the DC frequency')

    rho = config.admm_rho
    shrink = _pair_shrinkage(build_penalty(spec.scale_threshold(1.0 / rho)).shrink, isotropic)
    sampled = mask.sampled
    data = np.where(sampled, data, 0.0)
    eigenvalues = np.where(sampled, 1.0, gradient_eigenvalues(data.shape))
    scale = np.sqrt(data.size)

    x_hat = data.copy()
    x = idft2(x_hat).real
    zx, zy = grad(x)
    ux, uy = np.zeros_like(x), np.zeros_like(x)
    primal_trace: List[float] = []
    dual_trace: List[float] = []

    logger.info(
        'TV ADMM on a %dx%d image, %d samples, %s, rho=%g, %s shrinkage',
        data.shape[0],
        data.shape[1],
        mask.count,
        spec.describe(),
        rho,
        'isotropic' if isotropic else 'anisotropic',
    )
    termination, iterations = Termination.max_iters, config.max_iters
    for it in range(1, config.max_iters + 1):
        rhs = dft2(-div(zx - ux, zy - uy))
        x_hat = np.where(sampled, data, rhs / eigenvalues)
        x = idft2(x_hat).real
        gx, gy = grad(x)
        vx, vy = gx + ux, gy + uy
        zx_new, zy_new = shrink(vx, vy)
        ux, uy = vx - zx_new, vy - zy_new

        primal = float(np.sqrt(np.sum((gx - zx_new) ** 2 + (gy - zy_new) ** 2))) / scale
        dual = rho * float(np.sqrt(np.sum((zx_new - zx) ** 2 + (zy_new - zy) ** 2))) / scale
        zx, zy = zx_new, zy_new

        if primal == 0.0 and dual == 0.0:
            termination, iterations = Termination.fixed_point, it - 1
            break
        primal_trace.append(primal)
        dual_trace.append(dual)
        if it % LOG_EVERY == 0:
            logger.debug('TV ADMM iter %d: primal %.3e, dual %.3e', it, primal, dual)
        if primal <= config.step_tol and dual <= config.step_tol:
            termination, iterations = Termination.converged, it
            break

    complex_image = idft2(x_hat)
    constraint_error = float(np.max(np.abs(dft2(complex_image.real) - data)[sampled]))
    max_imag = float(np.max(np.abs(complex_image.imag)))
    logger.info(
        'TV ADMM stopped: %s after %d iterations, constraint error %.3e',
        termination.value,
        iterations,
        constraint_error,
    )
    return ReconstructionResult(
        image=ImageGrid(complex_image.real),
        iterations=iterations,
        termination=termination,
        primal_trace=primal_trace,
        dual_trace=dual_trace,
        constraint_error=constraint_error,
        max_imag=max_imag,
    )
