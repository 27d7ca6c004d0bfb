# Copyright (c) The shrinkcs authors.
from typing import Tuple, Union

import numpy as np

from shrinkcs.imaging.phantom import ImageGrid
from shrinkcs.imaging.sampling import FourierMask
from shrinkcs.utils.checks import InvalidInputError, check_finite

ImageLike = Union[ImageGrid, np.ndarray]


def _pixels(img: ImageLike) -> np.ndarray:
    return img.pixels if isinstance(img, ImageGrid) else np.asarray(img)


def grad(img: ImageLike) -> Tuple[np.ndarray, np.ndarray]:
    """Forward differences with periodic boundary: gx along columns, gy along rows."""
    x = _pixels(img)
    return np.roll(x, -1, axis=1) - x, np.roll(x, -1, axis=0) - x


def div(gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Backward-difference divergence, the negative adjoint of :func:`grad`."""
    return (gx - np.roll(gx, 1, axis=1)) + (gy - np.roll(gy, 1, axis=0))


def dft2(img: ImageLike) -> np.ndarray:
    """Orthonormal 2-D DFT."""
    return np.fft.fft2(_pixels(img), norm='ortho')


def idft2(coefficients: np.ndarray) -> np.ndarray:
    """Inverse of :func:`dft2`, complex valued."""
    return np.fft.ifft2(coefficients, norm='ortho')


def gradient_eigenvalues(shape: Tuple[int, int]) -> np.ndarray:
    """Eigenvalues of ∇ᵀ∇ in the DFT basis: 4sin²(πk/H) + 4sin²(πl/W)."""
    height, width = shape
    rows = 4.0 * np.sin(np.pi * np.arange(height) / height) ** 2
    cols = 4.0 * np.sin(np.pi * np.arange(width) / width) ** 2
    return rows[:, None] + cols[None, :]


def sample_fourier(img: ImageLike, mask: FourierMask) -> np.ndarray:
    """DFT of the image with the unsampled frequencies set to zero."""
    pixels = check_finite(_pixels(img), 'img')
    if pixels.shape != mask.sampled.shape:
        raise InvalidInputError(f'image {pixels.shape} does not match mask {mask.sampled.shape}')
    return np.where(mask.sampled, dft2(pixels), 0.0)
