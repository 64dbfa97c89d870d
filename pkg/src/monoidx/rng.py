"""Counter-based random streams keyed by (seed, purpose, counter...).

Every random quantity in the package comes from a Philox generator whose
key is derived from the user seed plus a fixed tuple of integers naming
what the draws are for. Two draws with the same key are bit-identical no
matter which thread makes them or in what order.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

# stream purposes
NOISE = 0
FOLDS = 1
BOOTSTRAP = 2
SYNTH_REPEAT = 3

NOISE_BLOCK = 1 << 16

_SEED_MASK = (1 << 64) - 1


def check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed <= _SEED_MASK:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return seed


def stream(seed: int, *key: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *key: int) -> int:
    ss = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, np.uint64)[0])


def standard_normals(seed: int, count: int, start: int = 0, workers: int = 1) -> np.ndarray:
    """Standard normal variates ``z_i`` for ``i`` in ``[start, start + count)``.

    ``z_i`` depends only on ``(seed, i)``: indices are cut into fixed blocks
    of ``NOISE_BLOCK`` and each block has its own stream.
    """
    out = np.empty(count)
    if count == 0:
        return out
    stop = start + count
    blocks = range(start // NOISE_BLOCK, (stop - 1) // NOISE_BLOCK + 1)
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda b: _fill_block(seed, b, out, start, stop), blocks))
    else:
        for b in blocks:
            _fill_block(seed, b, out, start, stop)
    return out


def _fill_block(seed, block, out, start, stop):
    lo = block * NOISE_BLOCK
    z = stream(seed, NOISE, block).standard_normal(NOISE_BLOCK)
    a, b = max(lo, start), min(lo + NOISE_BLOCK, stop)
    out[a - start:b - start] = z[a - lo:b - lo]
