"""Direction-set generators and slope inversion.

Six generators are provided:

==========  =======================  ==============================
id          value at index k         notes
==========  =======================  ==============================
lin         pi / k                   deterministic
lac         pi / 2^k                 deterministic
sin-lin     pi*sin(n)/n              n scans 1,2,..., keeps sin(n) > 0
sin-lac     pi*sin(n)/2^n            same index filter
rand-lin    pi*X_k / k               seeded stream required
rand-lac    pi*X_k / 2^k             seeded stream required
==========  =======================  ==============================

`invert` maps a sample to the increasing sequence of inverse slopes
pi/value.  For generated samples the division by pi is cancelled
symbolically: rand-lin inverts to (1/X_k)*k and rand-lac to (1/X_k)*2^k,
evaluated in exactly that form.  Witness searches rebuild candidate points
with the same expression, which makes subset checks exact float equality
rather than tolerance comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .streams import RandomStream

DETERMINISTIC_GENERATORS = ("lin", "lac", "sin-lin", "sin-lac")
RANDOM_GENERATORS = ("rand-lin", "rand-lac")
GENERATORS = DETERMINISTIC_GENERATORS + RANDOM_GENERATORS

# values pi/2^k (and 2^k scale factors) leave double range past this index
_MAX_LAC_INDEX = 1022

# two direction values closer than this, relatively, count as duplicates
DUPLICATE_RTOL = 2.0**-40


class DegenerateSampleError(ValueError):
    """Raised when inversion produces values that collide within tolerance."""


@dataclass(frozen=True)
class Provenance:
    generator: str
    count: int
    seed: int | None = None
    indices: tuple[int, ...] = ()  # stream/sequence index per value

    def spec(self) -> dict:
        out = {"gen": self.generator, "count": self.count}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


@dataclass(frozen=True)
class DirectionSample:
    """Finite set of directions (radians, in (0, pi]) with provenance."""

    values: tuple[float, ...]
    provenance: Provenance

    def __post_init__(self):
        for v in self.values:
            if not (0.0 < v <= math.pi):
                raise ValueError(f"direction {v} outside (0, pi]")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class OrderedSample:
    """Strictly increasing positive reals u_1 < u_2 < ... (inverse slopes)."""

    values: tuple[float, ...]

    def __post_init__(self):
        vs = self.values
        if any(v <= 0.0 for v in vs):
            raise ValueError("ordered sample values must be positive")
        if any(b <= a for a, b in zip(vs, vs[1:])):
            raise ValueError("ordered sample must be strictly increasing")

    def __len__(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


def _sin_indices(count: int) -> list[int]:
    # indices n = 1,2,... with sin(n) > 0, first `count` of them
    out = []
    n = 1
    while len(out) < count:
        if math.sin(n) > 0.0:
            out.append(n)
        n += 1
    return out


def generator_indices(generator: str, count: int) -> list[int]:
    """Sequence indices backing the first `count` values of a generator."""
    if generator in ("sin-lin", "sin-lac"):
        return _sin_indices(count)
    return list(range(1, count + 1))


def _raw_values(generator: str, indices: list[int], stream) -> list[float]:
    if generator == "lin":
        return [math.pi / n for n in indices]
    if generator == "lac":
        return [math.pi / 2.0**n for n in indices]
    if generator == "sin-lin":
        return [math.pi * math.sin(n) / n for n in indices]
    if generator == "sin-lac":
        return [math.pi * math.sin(n) / 2.0**n for n in indices]
    if generator == "rand-lin":
        return [math.pi * stream.value(k) / k for k in indices]
    if generator == "rand-lac":
        return [math.pi * stream.value(k) / 2.0**k for k in indices]
    raise ValueError(f"unknown generator id {generator!r}")


def generate(
    generator: str,
    count: int,
    seed: int | None = None,
    stream=None,
) -> DirectionSample:
    """First `count` directions of the named generator.

    Deterministic generators reject a seed; random ones require either a
    seed or an explicit stream (test doubles pass a ConstantStream).
    """
    if generator not in GENERATORS:
        raise ValueError(f"unknown generator id {generator!r}")
    if count < 1:
        raise ValueError("count must be >= 1")
    is_random = generator in RANDOM_GENERATORS
    if is_random:
        if stream is None:
            if seed is None:
                raise ValueError(f"generator {generator!r} requires a seed")
            stream = RandomStream(seed)
        elif seed is not None:
            raise ValueError("pass either seed or stream, not both")
    elif seed is not None or stream is not None:
        raise ValueError(f"generator {generator!r} is deterministic; no seed allowed")
    if generator in ("lac", "rand-lac", "sin-lac") and count > _MAX_LAC_INDEX:
        raise ValueError(f"lacunary-type generators support count <= {_MAX_LAC_INDEX}")

    indices = generator_indices(generator, count)
    values = _raw_values(generator, indices, stream)

    # drop values that collide with an earlier index within tolerance
    kept_v: list[float] = []
    kept_i: list[int] = []
    for n, v in zip(indices, values):
        if any(math.isclose(v, w, rel_tol=DUPLICATE_RTOL) for w in kept_v):
            continue
        kept_v.append(v)
        kept_i.append(n)

    seed_out = None
    if is_random and isinstance(stream, RandomStream):
        seed_out = stream.seed
    prov = Provenance(generator, count, seed_out, tuple(kept_i))
    return DirectionSample(tuple(kept_v), prov)


def generate_from_spec(spec: dict, stream=None) -> DirectionSample:
    """Build a sample from a JSON-style spec {"gen":…, "count":…, "seed":…}."""
    extra = set(spec) - {"gen", "count", "seed"}
    if extra:
        raise ValueError(f"unknown generator spec fields {sorted(extra)}")
    return generate(spec["gen"], spec["count"], spec.get("seed"), stream=stream)


def inverse_value(generator: str, index: int, stream=None) -> float:
    """pi/value at one index, with the pi cancelled symbolically.

    Random generators evaluate (1/X_k)*scale in exactly this form; T1/T2
    witness code uses the same expression so membership checks are exact.
    """
    if generator == "lin":
        return float(index)
    if generator == "lac":
        return 2.0**index
    if generator == "sin-lin":
        return index / math.sin(index)
    if generator == "sin-lac":
        return 2.0**index / math.sin(index)
    if generator == "rand-lin":
        return (1.0 / stream.value(index)) * index
    if generator == "rand-lac":
        return (1.0 / stream.value(index)) * 2.0**index
    raise ValueError(f"unknown generator id {generator!r}")


def invert(sample: DirectionSample, stream=None) -> OrderedSample:
    """Inverse slopes pi/theta of a sample, sorted strictly increasing."""
    prov = sample.provenance
    if prov.generator in GENERATORS and len(prov.indices) == len(sample.values):
        if prov.generator in RANDOM_GENERATORS and stream is None:
            if prov.seed is None:
                raise ValueError("random sample without seed; pass its stream")
            stream = RandomStream(prov.seed)
        vals = [inverse_value(prov.generator, n, stream) for n in prov.indices]
    else:
        vals = [math.pi / v for v in sample.values]
    vals.sort()
    for a, b in zip(vals, vals[1:]):
        if math.isclose(a, b, rel_tol=DUPLICATE_RTOL):
            raise DegenerateSampleError(f"inverse values collide near {a}")
    return OrderedSample(tuple(vals))


def invert_values(values) -> OrderedSample:
    """Inverse slopes of bare angle values (no provenance shortcut)."""
    vals = sorted(math.pi / v for v in values)
    for a, b in zip(vals, vals[1:]):
        if math.isclose(a, b, rel_tol=DUPLICATE_RTOL):
            raise DegenerateSampleError(f"inverse values collide near {a}")
    return OrderedSample(tuple(vals))


def stream_value(stream: RandomStream, k: int) -> float:
    """X_k of the stream; pure function of (seed, k)."""
    return stream.value(k)


def sample_to_csv_rows(sample: DirectionSample) -> list[tuple[int, float]]:
    """(index, value) rows for golden-file CSV export."""
    return list(zip(sample.provenance.indices, sample.values))
