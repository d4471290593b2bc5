"""Deterministic random-stream derivation for Monte Carlo work.

Every stochastic routine in this package draws from a counter-based
Philox generator whose 128-bit key is derived from a master seed plus a
tuple of context parts (replication index, phase tag, ...).  Streams are
therefore independent of evaluation order and of how work is split
across workers.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(master_seed: int, *parts: object) -> int:
    """Fold a master seed and context parts into a stable 64-bit seed.

    Uses blake2b so the result is identical across runs, platforms and
    interpreter instances (unlike builtin ``hash``).
    """
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(master_seed)).encode())
    for part in parts:
        h.update(b"/")
        h.update(repr(part).encode())
    return int.from_bytes(h.digest(), "big")


def stream(master_seed: int, *parts: object) -> np.random.Generator:
    """Independent generator for the stream named by ``parts``.

    The Philox key is (master_seed, blake2b(parts)); distinct names give
    distinct keys and thus statistically independent streams.
    """
    key = np.array(
        [int(master_seed) & _MASK64, derive_seed(master_seed, *parts)],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


def replication_stream(master_seed: int, index: int) -> np.random.Generator:
    """Stream driving Monte Carlo replication ``index``."""
    return stream(master_seed, "replication", int(index))
