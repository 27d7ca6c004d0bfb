# Copyright (c) The shrinkcs authors.
import numpy as np

SEED_BITS_DTYPE = np.uint32


def derive_seed(seed: int, *keys: int) -> int:
    """Derive an independent 32-bit seed from a root seed and integer keys.

    The derivation goes through `numpy.random.SeedSequence`, so
    `(seed, cell, trial)` always maps to the same stream no matter
    in which order (or on which worker) trials are executed.

    Args:
        seed (int): root seed
        *keys (int): e.g. cell index and trial index

    Returns:
        int: derived seed
    """
    sequence = np.random.SeedSequence([int(seed), *[int(k) for k in keys]])
    return int(sequence.generate_state(1, dtype=SEED_BITS_DTYPE)[0])


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    """PCG64 generator for `(seed, *keys)`, see :func:`derive_seed`."""
    sequence = np.random.SeedSequence([int(seed), *[int(k) for k in keys]])
    return np.random.Generator(np.random.PCG64(sequence))
