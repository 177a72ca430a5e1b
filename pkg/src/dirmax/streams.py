"""Seeded, counter-addressable uniform random streams.

The stream realizes an i.i.d. family of Uniform(0,1) variables indexed by
k >= 1.  Values are produced by a splitmix64-style index hash, so the value
at index k is a pure function of (seed, k): no prefix has to be generated,
which keeps large-horizon searches and parallel Monte Carlo loops cheap and
deterministic.

Scalar and vectorized paths produce bit-identical doubles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

ALGORITHM_ID = "splitmix64-index-v1"


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def _raw(seed: int, k: int) -> int:
    return _mix64((seed + k * _GAMMA) & _MASK64)


def _to_unit(bits: int) -> float:
    # top 53 bits, offset by half an ulp so the value is never 0.0 or 1.0
    return ((bits >> 11) + 0.5) * 2.0**-53


@dataclass(frozen=True)
class RandomStream:
    """Deterministic source of uniforms X_k in (0,1), addressable by index."""

    seed: int
    algorithm: str = ALGORITHM_ID

    def __post_init__(self):
        if self.algorithm != ALGORITHM_ID:
            raise ValueError(f"unknown stream algorithm {self.algorithm!r}")
        object.__setattr__(self, "seed", self.seed & _MASK64)

    def value(self, k: int) -> float:
        """X_k for integer index k >= 1."""
        if k < 1:
            raise ValueError("stream index must be >= 1")
        return _to_unit(_raw(self.seed, k))

    def values(self, ks) -> np.ndarray:
        """Vectorized X_k over an array of indices (each >= 1)."""
        ks = np.asarray(ks, dtype=np.uint64)
        if ks.size and int(ks.min()) < 1:
            raise ValueError("stream indices must be >= 1")
        z = np.uint64(self.seed) + ks * np.uint64(_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
        return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53

    def block(self, start: int, count: int) -> np.ndarray:
        """X_start .. X_{start+count-1} as a vector."""
        return self.values(np.arange(start, start + count, dtype=np.uint64))


@dataclass(frozen=True)
class ConstantStream:
    """Test double: every index returns the same value."""

    constant: float
    algorithm: str = "constant"

    def value(self, k: int) -> float:
        if k < 1:
            raise ValueError("stream index must be >= 1")
        return self.constant

    def values(self, ks) -> np.ndarray:
        ks = np.asarray(ks, dtype=np.uint64)
        return np.full(ks.shape, self.constant, dtype=np.float64)

    def block(self, start: int, count: int) -> np.ndarray:
        return np.full(count, self.constant, dtype=np.float64)


def unit_stream() -> ConstantStream:
    """The identity-perturbation double X_k = 1 (outside (0,1) on purpose)."""
    return ConstantStream(1.0)


def derive_seed(seed: int, label: int) -> int:
    """Independent sub-seed for experiment `label` under a master seed."""
    return _mix64((seed ^ _mix64((label * _GAMMA) & _MASK64)) & _MASK64)
