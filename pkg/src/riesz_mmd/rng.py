"""Seedable, splittable random streams for reproducible experiments.

A :class:`RngStream` is a *value*, not a stateful generator: every call that
consumes randomness derives a fresh counter-based generator from the pair
``(seed, stream_id)``, so the same stream always yields the same draw.
Callers that need fresh randomness derive child streams with :meth:`split`
(e.g. one child per flow step or per Monte Carlo trial), which keeps results
independent of evaluation order and parallel schedule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(a: int, b: int) -> int:
    """SplitMix64-style finalizer combining two 64-bit words."""
    x = (a * _GOLDEN + b + 1) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


@dataclass(frozen=True)
class RngStream:
    """A deterministic random stream identified by ``(seed, stream_id)``.

    Identical pairs produce identical draws on every platform (for a fixed
    numpy version); distinct ``stream_id`` values index statistically
    independent Philox streams.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        object.__setattr__(self, "seed", int(self.seed) & _MASK64)
        object.__setattr__(self, "stream_id", int(self.stream_id) & _MASK64)

    def split(self, k: int) -> "RngStream":
        """Child stream number ``k``; deterministic and collision-resistant."""
        if k < 0:
            raise ValueError(f"split index must be nonnegative, got {k}")
        return RngStream(self.seed, _mix64(self.stream_id, k))

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        return np.random.Generator(np.random.Philox(key=[self.seed, self.stream_id]))
