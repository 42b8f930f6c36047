"""Counter-based random streams.

Every stream is a Philox generator keyed by a tuple of non-negative integers
(typically ``(seed, chunk)`` or ``(seed, n, restart)``), so any piece of a
computation can be regenerated without replaying the ones before it.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator for the key ``(seed, *keys)``."""
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF, *(int(k) for k in keys)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
