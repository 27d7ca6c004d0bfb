# Copyright (c) The shrinkcs authors.
import math
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from shrinkcs.utils.checks import ConfigurationError, InvalidInputError


@dataclass(eq=False)
class FourierMask:
    """
    Retained frequencies of a size x size 2-D DFT.

    `sampled` uses numpy's FFT layout (DC at [0, 0]); `centered()` is the
    fftshifted view with DC at [size // 2, size // 2].

    Args:
        size (int): grid size
        lines (int): number of radial lines, 0 for masks not built from lines
        sampled (np.ndarray): boolean size x size array, True = frequency retained
    """

    size: int
    lines: int
    sampled: np.ndarray

    def __post_init__(self):
        self.sampled = np.asarray(self.sampled, dtype=bool)
        if self.sampled.shape != (self.size, self.size):
            raise InvalidInputError(
                f'mask must be {self.size}x{self.size}, got {self.sampled.shape}'
            )

    @classmethod
    def full(cls, size: int) -> 'FourierMask':  # noqa: D102
        return cls(size=size, lines=0, sampled=np.ones((size, size), dtype=bool))

    @classmethod
    def from_centered(cls, centered: np.ndarray, lines: int = 0) -> 'FourierMask':
        """Build from a mask with DC at the center, as stored in mask CSV files."""
        centered = np.asarray(centered) != 0
        return cls(size=centered.shape[0], lines=lines, sampled=np.fft.ifftshift(centered))

    @property
    def count(self) -> int:  # noqa: D102
        return int(np.count_nonzero(self.sampled))

    @property
    def sampling_ratio(self) -> float:  # noqa: D102
        return self.count / float(self.size * self.size)

    def centered(self) -> np.ndarray:  # noqa: D102
        return np.fft.fftshift(self.sampled)

    def is_symmetric(self) -> bool:
        """sampled[k] == sampled[-k] for every frequency k (indices mod size)."""
        return bool(np.array_equal(self.sampled, mirror(self.sampled)))


def mirror(grid: np.ndarray) -> np.ndarray:
    """grid[-k mod N] in FFT layout."""
    return np.roll(np.flip(grid, axis=(0, 1)), 1, axis=(0, 1))


def bresenham(r0: int, c0: int, r1: int, c1: int) -> Iterator[Tuple[int, int]]:
    """Grid cells of the digital segment from (r0, c0) to (r1, c1), both included."""
    dr, dc = abs(r1 - r0), -abs(c1 - c0)
    sr = 1 if r0 < r1 else -1
    sc = 1 if c0 < c1 else -1
    err = dr + dc
    r, c = r0, c0
    while True:
        yield r, c
        if r == r1 and c == c1:
            return
        e2 = 2 * err
        if e2 >= dc:
            err += dc
            r += sr
        if e2 <= dr:
            err += dr
            c += sc


def _ray_end(center: int, size: int, dr: float, dc: float) -> Tuple[int, int]:
    """Last grid cell on the ray center + t·(dr, dc), t >= 0."""
    limits = []
    for d in (dr, dc):
        if d > 1e-12:
            limits.append((size - 1 - center) / d)
        elif d < -1e-12:
            limits.append(-center / d)
    t = min(limits)
    return int(round(center + t * dr)), int(round(center + t * dc))


def radial_mask(size: int, n_lines: int, angle_offset: float = 0.0) -> FourierMask:
    """Frequencies on `n_lines` equally spaced lines through DC.

    The angles are `angle_offset + j·π/n_lines`. Every line is drawn with Bresenham
    from the center of the fftshifted grid to the border in both directions, and
    the union is closed under k -> -k so the data of a real image stays Hermitian.

    Args:
        size (int): grid size
        n_lines (int): 1 <= n_lines <= size
        angle_offset (float): rotation of the first line in radians

    Returns:
        FourierMask: the symmetric mask, DC always included
    """
    if int(size) != size or size < 2:
        raise ConfigurationError(f'mask size must be an integer >= 2, got: {size}')
    if int(n_lines) != n_lines or not 1 <= n_lines <= size:
        raise ConfigurationError(f'n_lines must lie in [1, {size}], got: {n_lines}')
    size, n_lines = int(size), int(n_lines)
    center = size // 2
    centered = np.zeros((size, size), dtype=bool)
    for j in range(n_lines):
        theta = angle_offset + j * math.pi / n_lines
        # rows grow downwards, so a positive angle moves up
        dr, dc = -math.sin(theta), math.cos(theta)
        for sign in (1.0, -1.0):
            r1, c1 = _ray_end(center, size, sign * dr, sign * dc)
            for r, c in bresenham(center, center, r1, c1):
                centered[r, c] = True
    sampled = np.fft.ifftshift(centered)
    sampled |= mirror(sampled)
    return FourierMask(size=size, lines=n_lines, sampled=sampled)
