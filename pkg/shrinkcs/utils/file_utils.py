# Copyright (c) The shrinkcs authors.
import json
import os
from typing import Any, Dict, Optional

import numpy as np
import yaml

from shrinkcs.utils.checks import InvalidInputError


def ensure_parent_dir(path: str) -> str:
    """Create the parent directory of `path` if needed and return `path`."""
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    return path


def sidecar_path(path: str) -> str:
    """`table.csv` -> `table.json`, `out` -> `out.json`"""
    root, ext = os.path.splitext(path)
    if ext.lower() == '.json':
        return root + '.meta.json'
    return root + '.json'


def write_json(path: str, payload: Dict[str, Any]) -> str:  # noqa: D103
    ensure_parent_dir(path)
    with open(path, mode='w', encoding='utf8') as file:
        json.dump(payload, file, indent=2, sort_keys=True, default=_json_default)
        file.write('\n')
    return path


def write_yaml(path: str, payload: Dict[str, Any]) -> str:
    """Dump a plain config dict as YAML."""
    ensure_parent_dir(path)
    with open(path, mode='w', encoding='utf8') as file:
        yaml.dump(payload, file, allow_unicode=True)
    return path


def write_matrix_csv(path: str, matrix, fmt: str = '%.17g') -> str:
    """Write a real matrix (or vector, as one column) row-major with a `# rows,cols` header.

    Args:
        path (str): destination CSV file
        matrix: 2-D array, or 1-D array written as a column
        fmt (str): number format, full double precision by default

    Returns:
        str: `path`
    """
    array = np.asarray(matrix, dtype=np.float64)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    ensure_parent_dir(path)
    rows, cols = array.shape
    np.savetxt(path, array, delimiter=',', fmt=fmt, header=f'{rows},{cols}', comments='# ')
    return path


def read_matrix_csv(path: str, expected_shape: Optional[tuple] = None) -> np.ndarray:
    """Read a CSV matrix written by :func:`write_matrix_csv` (header optional).

    Returns:
        np.ndarray: always 2-D
    """
    array = np.loadtxt(path, delimiter=',', comments='#', ndmin=2)
    header_shape = _read_header_shape(path)
    if header_shape is not None and header_shape != array.shape:
        raise InvalidInputError(f'{path}: header says {header_shape}, data is {array.shape}')
    if expected_shape is not None and array.shape != tuple(expected_shape):
        raise InvalidInputError(f'{path}: expected shape {expected_shape}, got {array.shape}')
    return array


def read_vector_csv(path: str) -> np.ndarray:
    """Read a vector stored as one column (or one row)."""
    return read_matrix_csv(path).reshape(-1)


def _read_header_shape(path: str) -> Optional[tuple]:
    with open(path, encoding='utf8') as file:
        first = file.readline().strip()
    if not first.startswith('#'):
        return None
    try:
        rows, cols = (int(v) for v in first.lstrip('#').split(','))
    except ValueError:
        return None
    return rows, cols


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if hasattr(obj, 'to_dict'):
        return obj.to_dict()
    raise TypeError(f'Object of type {type(obj).__name__} is not JSON serializable')
