"""SplitMix64 pseudo-random generator.

The generator keeps a single 64-bit counter. Each output is
``mix(state + (k+1) * GAMMA)`` with the standard SplitMix64 finalizer, so
a block of ``n`` outputs can be produced in one vectorized step and the
stream is identical on every platform.
"""
from __future__ import annotations

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Deterministic 64-bit stream seeded by an unsigned integer."""

    def __init__(self, seed: int):
        seed = int(seed)
        if seed < 0 or seed > _MASK:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = seed

    def next_int(self) -> int:
        """Next raw output as a Python int (same stream as ``next_u64``)."""
        self.state = z = (self.state + GAMMA) & _MASK
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def next_u64(self, size: int) -> np.ndarray:
        """Return the next ``size`` raw outputs as a uint64 array."""
        steps = np.arange(1, size + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + steps * np.uint64(GAMMA)
            out = _mix(z)
        self.state = (self.state + size * GAMMA) & _MASK
        return out

    def random(self, size: int | None = None):
        """Uniform doubles in [0, 1) built from the top 53 bits."""
        if size is None:
            return (self.next_int() >> 11) * (1.0 / (1 << 53))
        return (self.next_u64(size) >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))

    def integer(self, bound: int) -> int:
        """Unbiased integer in [0, bound) by rejection on the top bits."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_int()
            if x < limit:
                return x % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for k in range(len(items) - 1, 0, -1):
            r = self.integer(k + 1)
            items[k], items[r] = items[r], items[k]

    def spawn(self) -> "SplitMix64":
        """Independent child stream seeded from the next output."""
        return SplitMix64(self.next_int())
