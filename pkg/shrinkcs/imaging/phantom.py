# Copyright (c) The shrinkcs authors.
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from shrinkcs.utils.checks import ConfigurationError, InvalidInputError, check_finite

MIN_PHANTOM_SIZE = 16

# (intensity, semi-axis a, semi-axis b, center x, center y, rotation in degrees),
# the ten ellipses of the Shepp-Logan head with the high-contrast intensities,
# which keep the image in [0, 1]
SHEPP_LOGAN_ELLIPSES: Tuple[Tuple[float, float, float, float, float, float], ...] = (
    (1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    (-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0),
    (-0.2, 0.11, 0.31, 0.22, 0.0, -18.0),
    (-0.2, 0.16, 0.41, -0.22, 0.0, 18.0),
    (0.1, 0.21, 0.25, 0.0, 0.35, 0.0),
    (0.1, 0.046, 0.046, 0.0, 0.1, 0.0),
    (0.1, 0.046, 0.046, 0.0, -0.1, 0.0),
    (0.1, 0.046, 0.023, -0.08, -0.605, 0.0),
    (0.1, 0.023, 0.023, 0.0, -0.606, 0.0),
    (0.1, 0.023, 0.046, 0.06, -0.605, 0.0),
)


@dataclass(eq=False)
class ImageGrid:
    """
    A real image stored row-major, row 0 at the top.

    Args:
        pixels (np.ndarray): height x width finite values, nominally in [0, 1]
    """

    pixels: np.ndarray

    def __post_init__(self):
        self.pixels = check_finite(self.pixels, 'pixels')
        if self.pixels.ndim != 2 or min(self.pixels.shape) < 1:
            raise InvalidInputError(
                f'an image must be a non-empty 2-D array, got {self.pixels.shape}'
            )

    @property
    def height(self) -> int:  # noqa: D102
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:  # noqa: D102
        return int(self.pixels.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:  # noqa: D102
        return self.height, self.width

    def relative_error(self, reference: 'ImageGrid') -> float:
        """‖self − reference‖₂ / ‖reference‖₂."""
        if reference.shape != self.shape:
            raise InvalidInputError(f'shape mismatch: {self.shape} vs {reference.shape}')
        norm = float(np.linalg.norm(reference.pixels))
        diff = float(np.linalg.norm(self.pixels - reference.pixels))
        return diff / norm if norm > 0 else diff


def pixel_centers(size: int) -> Tuple[np.ndarray, np.ndarray]:
    """(x, y) coordinates of the pixel midpoints of a size x size grid over [-1, 1]²."""
    coords = -1.0 + (2.0 * np.arange(size) + 1.0) / size
    x, y = np.meshgrid(coords, coords[::-1])
    return x, y


def shepp_logan(size: int) -> ImageGrid:
    """The Shepp-Logan phantom, each pixel set by its midpoint.

    Args:
        size (int): image width and height, >= 16

    Returns:
        ImageGrid: a size x size image with values in [0, 1]
    """
    if int(size) != size or size < MIN_PHANTOM_SIZE:
        raise ConfigurationError(
            f'phantom size must be an integer >= {MIN_PHANTOM_SIZE}, got: {size}'
        )
    size = int(size)
    x, y = pixel_centers(size)
    image = np.zeros((size, size))
    for intensity, a, b, x0, y0, degrees in SHEPP_LOGAN_ELLIPSES:
        theta = np.deg2rad(degrees)
        cos, sin = np.cos(theta), np.sin(theta)
        dx, dy = x - x0, y - y0
        u = dx * cos + dy * sin
        v = -dx * sin + dy * cos
        image[(u / a) ** 2 + (v / b) ** 2 <= 1.0] += intensity
    return ImageGrid(image)
