"""Particle clouds: the state of a flow and the support of an empirical measure."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ParticleSet:
    """An ordered collection of ``n`` points in ``R^d``.

    The wrapped array is a C-contiguous float64 copy of the input, marked
    read-only so a set can be shared freely between threads and log entries.

    Parameters
    ----------
    points : array_like, shape (n, d)
        One row per particle. A 1-D input of length n is treated as n
        points on the real line. All coordinates must be finite.
    """

    points: np.ndarray = field()

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, order="C", copy=True)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2:
            raise ValueError(f"points must be a 2-D array, got ndim={pts.ndim}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"need n >= 1 and d >= 1, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points contain NaN or Inf")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.n


def as_particles(x) -> ParticleSet:
    """Coerce an array or ParticleSet to a ParticleSet."""
    if isinstance(x, ParticleSet):
        return x
    return ParticleSet(np.asarray(x))


def require_same_dim(x: ParticleSet, y: ParticleSet) -> None:
    from .errors import DimensionMismatchError

    if x.d != y.d:
        raise DimensionMismatchError(f"dimension mismatch: {x.d} != {y.d}")
