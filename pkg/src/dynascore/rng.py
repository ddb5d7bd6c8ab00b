"""Seeded random streams.

Every stream is a PCG64 generator keyed by ``SeedSequence(seed, spawn_key=key)``.
String components of the key are mapped to integers with CRC-32, so a stream is
fully determined by ``(seed, key)`` on every platform numpy supports.
"""

from __future__ import annotations

import os
import zlib

import numpy as np

SEED_ENV = "DYNASCORE_SEED"
_MASK64 = (1 << 64) - 1


def _key_part(part: int | str) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode("utf-8"))
    if part < 0:
        raise ValueError(f"stream key components must be non-negative, got {part}")
    return int(part)


def _seed_sequence(seed: int, key: tuple[int | str, ...]) -> np.random.SeedSequence:
    if not 0 <= seed <= _MASK64:
        raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
    return np.random.SeedSequence(int(seed), spawn_key=tuple(_key_part(k) for k in key))


def stream(seed: int, *key: int | str) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(_seed_sequence(seed, key)))


def derive_seed(seed: int, *key: int | str) -> int:
    """A child 64-bit seed, e.g. for one sweep cell and replicate."""
    return int(_seed_sequence(seed, key).generate_state(1, np.uint64)[0])


def default_seed(fallback: int = 0) -> int:
    value = os.environ.get(SEED_ENV)
    if value is None or value.strip() == "":
        return fallback
    return int(value)
