# Copyright (c) The shrinkcs authors.
import logging

import numpy as np

from shrinkcs.imaging.phantom import ImageGrid
from shrinkcs.imaging.sampling import FourierMask
from shrinkcs.utils.checks import InvalidInputError
from shrinkcs.utils.file_utils import ensure_parent_dir, read_matrix_csv, write_matrix_csv

logger = logging.getLogger(__name__)

PGM_MAXVAL = 255


def write_pgm(path: str, image: ImageGrid, vmin: float = 0.0, vmax: float = 1.0) -> str:
    """8-bit binary (P5) preview, values clipped to [vmin, vmax]."""
    if not vmax > vmin:
        raise InvalidInputError(f'need vmax > vmin, got vmin={vmin}, vmax={vmax}')
    scaled = (np.clip(image.pixels, vmin, vmax) - vmin) / (vmax - vmin)
    data = np.rint(scaled * PGM_MAXVAL).astype(np.uint8)
    ensure_parent_dir(path)
    with open(path, 'wb') as file:
        file.write(f'P5\n{image.width} {image.height}\n{PGM_MAXVAL}\n'.encode('ascii'))
        file.write(data.tobytes())
    return path


def read_pgm(path: str) -> ImageGrid:
    """Read an 8-bit P5 file written by :func:`write_pgm`, scaled back to [0, 1]."""
    with open(path, 'rb') as file:
        content = file.read()
    tokens, pos = [], 0
    while len(tokens) < 4:
        while content[pos : pos + 1].isspace():
            pos += 1
        if content[pos : pos + 1] == b'#':
            pos = content.index(b'\n', pos) + 1
            continue
        start = pos
        while not content[pos : pos + 1].isspace():
            pos += 1
        tokens.append(content[start:pos])
    if tokens[0] != b'P5' or int(tokens[3]) != PGM_MAXVAL:
        raise InvalidInputError(f'{path}: only 8-bit binary PGM (P5, maxval 255) is supported')
    width, height = int(tokens[1]), int(tokens[2])
    pixels = np.frombuffer(content[pos + 1 : pos + 1 + width * height], dtype=np.uint8)
    if pixels.size != width * height:
        raise InvalidInputError(f'{path}: expected {width * height} pixels, got {pixels.size}')
    return ImageGrid(pixels.reshape(height, width).astype(np.float64) / PGM_MAXVAL)


def write_image_csv(path: str, image: ImageGrid) -> str:  # noqa: D103
    return write_matrix_csv(path, image.pixels)


def read_image_csv(path: str) -> ImageGrid:  # noqa: D103
    return ImageGrid(read_matrix_csv(path))


def write_mask_csv(path: str, mask: FourierMask) -> str:
    """0/1 matrix with DC at the center."""
    return write_matrix_csv(path, mask.centered().astype(np.float64), fmt='%d')


def read_mask_csv(path: str) -> FourierMask:  # noqa: D103
    centered = read_matrix_csv(path)
    if centered.shape[0] != centered.shape[1]:
        raise InvalidInputError(f'{path}: a mask must be square, got {centered.shape}')
    return FourierMask.from_centered(centered)
