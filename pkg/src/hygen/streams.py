"""Deterministic named random streams derived from one master seed.

Every stage of the pipeline pulls its randomness from its own generator,
keyed by (master seed, stage name, index). Streams never interact, so
adding samples or reordering stages cannot perturb the draws of another
stage, and identical jobs reproduce identical output bit for bit.
"""

from __future__ import annotations

import zlib

import numpy as np

__all__ = ["stream"]

MAX_SEED = 2 ** 64


def stream(master_seed: int, stage: str, index: int = 0) -> np.random.Generator:
    """Generator for one named stage; same key, same stream, always."""
    if not 0 <= master_seed < MAX_SEED:
        raise ValueError("master seed must be a 64-bit nonnegative integer")
    if index < 0:
        raise ValueError("stream index must be nonnegative")
    key = zlib.crc32(stage.encode("utf-8"))
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(key, index))
    return np.random.default_rng(seq)
