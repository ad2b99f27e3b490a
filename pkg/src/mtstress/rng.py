"""Seed derivation for independent random streams."""

import numpy as np


def derive_seed(seed: int, *keys: int) -> int:
    """A 32-bit seed for the stream addressed by ``keys`` under the master ``seed``.

    Different key tuples give statistically independent streams, so folds, subjects
    and model kinds can draw randomness in any order or in parallel.
    """
    return int(np.random.SeedSequence([seed, *keys]).generate_state(1)[0])


def stream(seed: int, *keys: int) -> np.random.Generator:
    """Generator for the stream addressed by ``keys`` under the master ``seed``."""
    return np.random.default_rng([seed, *keys])
