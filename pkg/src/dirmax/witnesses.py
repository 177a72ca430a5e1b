"""Constructive witness searches for the two random direction-set theorems.

T1 route: the inverse set of the rand-lin generator contains perturbed
homogeneous sets {ka/X_ka}.  The search scans multipliers a until every
index ka has X_ka within 2^-N of 1, then emits the perturbed set and its
factor.

T2 route: the inverse set of the rand-lac generator fills all 2^N equal
subintervals of some dyadic interval [2^d, 2^(d+1)].  Points 2^k/X_k are
bucketed purely in exponent space (d = k + floor(log2(1/X_k))), so horizons
far beyond double-precision range cost nothing; values are only
materialized for the found (small) d.

Witness values are built with the same float expressions as
``directions.inverse_value``, so subset membership is exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .directions import OrderedSample, inverse_value
from .perron import perron_factor

G_BOUND = 6.0


class OrderingLostError(ValueError):
    """Perturbation destroyed strict monotonicity (precondition violated)."""


@dataclass(frozen=True)
class HomogeneousSpec:
    """Arithmetic progression {ka : 1 <= k <= 2^N}."""

    a: int
    N: int

    def __post_init__(self):
        if self.a < 1 or self.N < 1:
            raise ValueError("need a >= 1 and N >= 1")

    @property
    def size(self) -> int:
        return 1 << self.N


def homogeneous_set(spec: HomogeneousSpec) -> OrderedSample:
    return OrderedSample(tuple(float(k * spec.a) for k in range(1, spec.size + 1)))


@dataclass(frozen=True)
class Perturbation:
    """Positive relative perturbation, one value per element of H_{a,N}."""

    eps: tuple[float, ...]

    def __post_init__(self):
        if any(e <= 0.0 for e in self.eps):
            raise ValueError("perturbation values must be strictly positive")

    @property
    def sup_norm(self) -> float:
        return max(self.eps)


def perturbed_homogeneous(spec: HomogeneousSpec, eps: Perturbation) -> OrderedSample:
    """{(1+eps_k) * ka}; strictly increasing whenever 2^N*‖eps‖ <= 1/2."""
    if len(eps.eps) != spec.size:
        raise ValueError(f"need {spec.size} perturbation values")
    vals = [(1.0 + e) * (k * spec.a) for k, e in zip(range(1, spec.size + 1), eps.eps)]
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise OrderingLostError("perturbed set is not strictly increasing")
    return OrderedSample(tuple(vals))


def en_indices(stream, N: int, horizon: int) -> np.ndarray:
    """Indices k <= horizon with |X_k - 1| <= 2^-N (i.e. X_k >= 1 - 2^-N)."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    ks = np.arange(1, horizon + 1, dtype=np.uint64)
    x = stream.values(ks)
    return ks[x >= 1.0 - 2.0**-N].astype(np.int64)


@dataclass(frozen=True)
class WitnessReport:
    """Outcome of a T1/T2 search, with every precondition check recorded.

    ``checks`` gate success; ``diagnostics`` are named pass/fail flags that
    are informative but not required (e.g. the sufficient-norm condition
    for the factor bound, which the index-set membership does not actually
    imply; the factor bound itself is what is asserted).
    """

    theorem: str
    params: dict
    found: bool
    witness: tuple[float, ...] = ()
    g_value: float | None = None
    auxiliary: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def all_checks_pass(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": dict(self.params),
            "found": self.found,
            "witness": list(self.witness),
            "g_value": self.g_value,
            "auxiliary": dict(self.auxiliary),
            "checks": dict(self.checks),
            "diagnostics": dict(self.diagnostics),
        }

    def summary(self) -> str:
        state = "found" if self.found else "not found"
        g = "n/a" if self.g_value is None else format(self.g_value, ".17g")
        ok = "ok" if self.all_checks_pass else "CHECK-FAILED"
        return f"{self.theorem} witness {state}; G = {g}; checks {ok}"


def t1_witness_search(stream, N: int, a_max: int) -> WitnessReport:
    """First multiplier a <= a_max with H_{a,N} inside E_N, perturbed by 1/X."""
    if N < 1 or a_max < 1:
        raise ValueError("need N >= 1 and a_max >= 1")
    size = 1 << N
    horizon = a_max * size
    ks = np.arange(1, horizon + 1, dtype=np.uint64)
    x = stream.values(ks)
    in_en = x >= 1.0 - 2.0**-N

    a_grid = np.arange(1, a_max + 1, dtype=np.int64)
    mult = a_grid[:, None] * np.arange(1, size + 1, dtype=np.int64)[None, :]
    hits = in_en[mult - 1].all(axis=1)
    params = {"N": N, "a_max": a_max, "seed": getattr(stream, "seed", None),
              "algorithm": getattr(stream, "algorithm", "custom")}

    if not hits.any():
        return WitnessReport("t1", params, found=False,
                             auxiliary={"scanned_a": a_max})
    a = int(a_grid[np.argmax(hits)])

    members = [a * k for k in range(1, size + 1)]
    xs = [float(x[m - 1]) for m in members]
    qs = [1.0 / xv for xv in xs]
    witness = [q * m for q, m in zip(qs, members)]
    eps = [q - 1.0 for q in qs]
    eps_norm = max(eps)

    identity_exact = all(
        (1.0 + (q - 1.0)) * m == w for q, m, w in zip(qs, members, witness)
    )
    in_sample = all(
        inverse_value("rand-lin", m, stream) == w for m, w in zip(members, witness)
    )
    increasing = all(b > a_ for a_, b in zip(witness, witness[1:]))
    g_value = perron_factor(witness) if len(witness) >= 2 else None

    checks = {
        "witness_strictly_increasing": increasing,
        "perturbation_identity_exact": identity_exact,
        "witness_in_inverse_sample": in_sample,
        "g_below_6": (g_value is None) or (g_value < G_BOUND),
    }
    # membership in E_N bounds eps by 2^-N/(1 - 2^-N), which is weaker than
    # the sufficient condition of the factor bound; record, don't gate
    diagnostics = {"norm_precondition_2N_eps_le_half": size * eps_norm <= 0.5}
    aux = {
        "a": a,
        "indices": members,
        "eps_sup_norm": eps_norm,
        "en_density_threshold": 1.0 - 2.0**-N,
    }
    return WitnessReport("t1", params, True, tuple(witness), g_value, aux, checks,
                         diagnostics)


def dyadic_subinterval(d: int, l: int, N: int) -> tuple[float, float]:
    """Closed subinterval I_{d,l}; the 2^N of them tile [2^d, 2^(d+1)]."""
    if not 1 <= l <= (1 << N):
        raise ValueError(f"l must lie in [1, 2^{N}]")
    if d > 1022:
        raise OverflowError("dyadic endpoints exceed double range for d > 1022")
    scale = 2.0**d
    frac = 1 << N
    return (scale * (1.0 + (l - 1) / frac), scale * (1.0 + l / frac))


def dyadic_bucket(base_exp, x, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Dyadic position (d, l) of points u = 2^base / x, in exponent space.

    log2(u) = base - log2(x), d = base + floor(-log2 x), and the bucket
    index comes from the normalized offset 2^frac(log2 u) - 1 in [0,1).
    Boundary points (exact powers of two, exact bucket edges) go to the
    lower interval.  Works far beyond double range since u is never formed.
    """
    base_exp = np.asarray(base_exp, dtype=np.int64)
    x = np.asarray(x, dtype=np.float64)
    s = -np.log2(x)
    e = np.floor(s)
    f = s - e
    d = base_exp + e.astype(np.int64)
    t = np.exp2(f) - 1.0
    frac = 1 << N
    y = t * frac
    j = np.floor(y).astype(np.int64)
    l = j + 1
    on_edge = (y == j) & (j >= 1)
    l[on_edge] = j[on_edge]
    power_of_two = f == 0.0
    d[power_of_two] -= 1
    l[power_of_two] = frac
    np.clip(l, 1, frac, out=l)
    return d, l


def bucket_inverse_points(stream, N: int, k_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dyadic position of the points 2^k/X_k for k = 1..k_max.

    Returns (k, d, l) arrays: point k lies in I_{d,l}.
    """
    ks = np.arange(1, k_max + 1, dtype=np.uint64)
    x = stream.values(ks)
    d, l = dyadic_bucket(ks.astype(np.int64), x, N)
    return ks.astype(np.int64), d, l


def filled_dyadic_levels(stream, N: int, d_max: int) -> tuple[np.ndarray, np.ndarray]:
    """(levels, representative-k matrix) of the fill state for d <= d_max.

    ``levels`` is a bool matrix (d_max+1, 2^N): row d tells which
    subintervals of I_d contain a point.  The companion int matrix holds
    the smallest contributing stream index per bucket (0 = empty).
    """
    frac = 1 << N
    ks, d, l = bucket_inverse_points(stream, N, d_max)
    keep = (d >= 1) & (d <= d_max)
    dk, lk, kk = d[keep], l[keep], ks[keep]
    rep = np.full((d_max + 1, frac + 1), np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(rep, (dk, lk), kk)
    filled = rep[:, 1:] != np.iinfo(np.int64).max
    rep_out = np.where(filled, rep[:, 1:], 0)
    return filled, rep_out


def t2_witness_search(stream, N: int, d_max: int) -> WitnessReport:
    """Smallest d <= d_max whose 2^N subintervals all contain a point.

    Extraction keeps one point per even-indexed subinterval, giving gaps in
    [delta, 3*delta] with delta = 2^(d-N).  When 2^d exceeds double range
    the points are materialized normalized by 2^d (exact power-of-two
    scaling, so the identity with the inverse-sample formula is preserved);
    spacing and factor checks are scale-invariant and unaffected.
    """
    if N < 1 or d_max < 1:
        raise ValueError("need N >= 1 and d_max >= 1")
    frac = 1 << N
    params = {"N": N, "d_max": d_max, "seed": getattr(stream, "seed", None),
              "algorithm": getattr(stream, "algorithm", "custom")}
    filled, rep = filled_dyadic_levels(stream, N, d_max)
    full_rows = np.nonzero(filled.all(axis=1))[0]
    full_rows = full_rows[full_rows >= 1]
    if full_rows.size == 0:
        return WitnessReport("t2", params, found=False,
                             auxiliary={"scanned_d": d_max})
    d = int(full_rows.min())
    normalized = d > 900

    point_ks = [int(rep[d, l - 1]) for l in range(1, frac + 1)]
    if normalized:
        # v = u / 2^d in [1, 2]; same rounding as inverse_value up to the
        # exact 2^d factor, since power-of-two scaling commutes with fl()
        points = [(1.0 / stream.value(k)) * 2.0 ** (k - d) for k in point_ks]
        scale = 0  # endpoints below are for I_{0,l} = normalized I_{d,l}
    else:
        points = [inverse_value("rand-lac", k, stream) for k in point_ks]
        scale = d
    in_subintervals = all(
        lo <= u <= hi
        for u, (lo, hi) in (
            (points[l - 1], dyadic_subinterval(scale, l, N)) for l in range(1, frac + 1)
        )
    )

    witness = [points[2 * l - 1] for l in range(1, frac // 2 + 1)]
    delta = 2.0 ** (scale - N)
    gaps = [b - a for a, b in zip(witness, witness[1:])]
    spacing_ok = all(delta <= g <= 3.0 * delta for g in gaps)
    if normalized:
        in_sample = all(
            (1.0 / stream.value(k)) * 2.0 ** (k - d) == w
            for k, w in zip(point_ks[1::2], witness)
        )
    else:
        in_sample = all(
            inverse_value("rand-lac", k, stream) == w
            for k, w in zip(point_ks[1::2], witness)
        )
    g_value = perron_factor(witness) if len(witness) >= 2 else None

    checks = {
        "subintervals_all_hit": True,
        "points_in_subintervals": in_subintervals,
        "witness_in_inverse_sample": in_sample,
        "spacing_within_delta_3delta": spacing_ok,
        "g_at_most_6": (g_value is None) or (g_value <= G_BOUND),
    }
    aux = {
        "d": d,
        "normalized": normalized,
        "delta_log2": d - N,
        "delta": 2.0 ** (d - N) if d - N <= 1022 else None,
        "subinterval_points": [
            {"l": l, "k": point_ks[l - 1], "u": points[l - 1]} for l in range(1, frac + 1)
        ],
        "gaps": gaps,
    }
    return WitnessReport("t2", params, True, tuple(witness), g_value, aux, checks)
