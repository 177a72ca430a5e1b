"""Closed-form bucket probabilities, their Monte Carlo checks, and schedules.

The exact value p(N, l) is the probability that the point 2^(d-l)/X lands
in the l-th of the 2^N equal subintervals of [2^d, 2^(d+1)]; it does not
depend on d.  The product over l is eta(N), a lower bound for the
frequency of completely filled dyadic intervals.

Monte Carlo loops draw one (or one block of) uniform(s) per trial from a
counter-addressable stream, so totals are reproducible and independent of
how trials are chunked across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .streams import RandomStream, derive_seed
from .witnesses import dyadic_bucket, filled_dyadic_levels


@dataclass(frozen=True)
class FrequencyEstimate:
    """Empirical event frequency with a binomial standard error."""

    trials: int
    hits: int
    frequency: float
    stderr: float

    @staticmethod
    def from_counts(hits: int, trials: int) -> "FrequencyEstimate":
        if trials < 1:
            raise ValueError("trials must be >= 1")
        p = hits / trials
        return FrequencyEstimate(trials, hits, p, math.sqrt(p * (1.0 - p) / trials))

    def within_band(self, p: float, nsigma: float = 4.0) -> bool:
        """|frequency - p| against nsigma binomial deviations at p."""
        sigma = math.sqrt(p * (1.0 - p) / self.trials)
        return abs(self.frequency - p) <= nsigma * sigma

    def at_least(self, p_lower: float, nsigma: float = 4.0) -> bool:
        return self.frequency >= p_lower - nsigma * self.stderr

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "hits": self.hits,
            "frequency": self.frequency,
            "stderr": self.stderr,
        }


def p_analytic(N: int, l: int) -> float:
    """2^-l * ((1 + (l-1)/2^N)^-1 - (1 + l/2^N)^-1)."""
    frac = 1 << N
    if not 1 <= l <= frac:
        raise ValueError(f"l must lie in [1, 2^{N}]")
    return 2.0**-l * (1.0 / (1.0 + (l - 1) / frac) - 1.0 / (1.0 + l / frac))


def eta(N: int) -> float:
    """Product of p_analytic over l = 1..2^N (underflows near N = 7)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    out = 1.0
    for l in range(1, (1 << N) + 1):
        out *= p_analytic(N, l)
    return out


def eta_log2(N: int) -> float:
    """log2 of eta(N); safe for any N where 2^N terms are enumerable."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return sum(math.log2(p_analytic(N, l)) for l in range(1, (1 << N) + 1))


def homogeneous_inclusion_prob(N: int) -> float:
    """Probability that all 2^N stream values sit within 2^-N of 1."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return 2.0 ** (-N * (1 << N))


def mc_p(
    N: int,
    l: int,
    trials: int,
    seed: int,
    d: int | None = None,
    stream=None,
    chunks: int = 1,
) -> FrequencyEstimate:
    """Monte Carlo frequency of 2^(d-l)/X in I_{d,l} over fresh uniforms.

    The level d genuinely enters the bucketing arithmetic, so running two
    different d values demonstrates d-independence rather than assuming it.
    Requires d - l >= 1 so the point's base exponent stays positive.
    Trial i draws the stream value at index i; chunking the trial range
    over workers cannot change the totals.
    """
    frac = 1 << N
    if not 1 <= l <= frac:
        raise ValueError(f"l must lie in [1, 2^{N}]")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if d is None:
        d = frac + 1
    if d - l < 1:
        raise ValueError("need d - l >= 1")
    if stream is None:
        stream = RandomStream(derive_seed(seed, 0x70))
    hits = 0
    bounds = np.linspace(0, trials, max(1, chunks) + 1).astype(np.int64)
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if hi == lo:
            continue
        x = stream.block(int(lo) + 1, int(hi - lo))
        dd, ll = dyadic_bucket(np.full(int(hi - lo), d - l, dtype=np.int64), x, N)
        hits += int(np.count_nonzero((dd == d) & (ll == l)))
    return FrequencyEstimate.from_counts(hits, trials)


def mc_event_a(stream, N: int, d_lo: int, d_hi: int) -> FrequencyEstimate:
    """Frequency, across d in [d_lo, d_hi], of all 2^N subintervals hit."""
    if not 1 <= d_lo <= d_hi:
        raise ValueError("need 1 <= d_lo <= d_hi")
    filled, _ = filled_dyadic_levels(stream, N, d_hi)
    rows = filled[d_lo : d_hi + 1].all(axis=1)
    return FrequencyEstimate.from_counts(int(rows.sum()), d_hi - d_lo + 1)


def mc_inclusion(
    N: int,
    trials: int,
    seed: int,
    stream=None,
    chunks: int = 1,
) -> FrequencyEstimate:
    """Frequency of a full homogeneous block landing in E_N.

    Each trial spends 2^N consecutive stream indices; a hit means every
    value is >= 1 - 2^-N.  Chunking changes only the loop partition, never
    the totals.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    size = 1 << N
    if stream is None:
        stream = RandomStream(derive_seed(seed, 0x71))
    threshold = 1.0 - 2.0**-N
    hits = 0
    bounds = np.linspace(0, trials, chunks + 1).astype(np.int64)
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if hi == lo:
            continue
        block = stream.block(int(lo) * size + 1, int(hi - lo) * size)
        block = block.reshape(int(hi - lo), size)
        hits += int((block >= threshold).all(axis=1).sum())
    return FrequencyEstimate.from_counts(hits, trials)


SCHEDULE_KINDS = ("multiplier", "extraction")


def schedule(kind: str, N: int, count: int) -> list[int]:
    """Index schedules that make the searched events independent.

    ``multiplier``: a_i = 2^(2N(i+1)), giving pairwise disjoint homogeneous
    sets (a_i * 2^N < a_{i+1}).  ``extraction``: levels d_s spaced by
    2^N + 2 > 2^N + 1.  Python integers, so no width overflow applies.
    """
    if kind not in SCHEDULE_KINDS:
        raise ValueError(f"unknown schedule kind {kind!r}")
    if count < 1:
        raise ValueError("count must be >= 1")
    if N < 1:
        raise ValueError("N must be >= 1")
    if kind == "multiplier":
        out = [1 << (2 * N * (i + 1)) for i in range(1, count + 1)]
        for a, b in zip(out, out[1:]):
            assert a * (1 << N) < b
        return out
    step = (1 << N) + 2
    return [s * step for s in range(1, count + 1)]
