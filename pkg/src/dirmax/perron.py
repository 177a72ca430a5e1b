"""Perron factor of an ordered sample and capacity estimation.

For an increasing sample u_1 < ... < u_n the factor is the supremum of

    (u_{k+2l} - u_{k+l})/(u_{k+l} - u_k) + (u_{k+l} - u_k)/(u_{k+2l} - u_{k+l})

over admissible index pairs.  Two admissibility variants exist:

* ``capacity`` (default): k >= 1, l >= 1, k + 2l <= n
* ``ordered``:  additionally l <= k

Every term is r + 1/r >= 2, attained exactly on arithmetic progressions.
A two-point sample has no admissible pair; since any two points form an
arithmetic progression its factor is taken to be exactly 2.0, which keeps
homogeneous sets of every order and order-1 capacities well defined.
The capacity of order N is the infimum of the factor over size-2^N subsets,
computed exactly by enumeration when feasible and bounded from above by
greedy and swap-local-search heuristics otherwise.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from .directions import OrderedSample

VARIANTS = ("capacity", "ordered")

DEFAULT_ENUMERATION_BUDGET = 10**7


class EnumerationBudgetError(ValueError):
    """Subset count exceeds the exact-enumeration budget."""


def _values(U) -> np.ndarray:
    if isinstance(U, OrderedSample):
        return U.array()
    return np.asarray(U, dtype=np.float64)


def perron_term(U, k: int, l: int) -> float:
    """Single summand at 1-based indices (k, l); requires k + 2l <= len(U)."""
    u = _values(U)
    n = len(u)
    if k < 1 or l < 1 or k + 2 * l > n:
        raise IndexError(f"(k={k}, l={l}) out of range for sample of size {n}")
    a = u[k + l - 1] - u[k - 1]
    b = u[k + 2 * l - 1] - u[k + l - 1]
    if a <= 0.0 or b <= 0.0:
        raise ValueError("sample is not strictly increasing")
    r = b / a
    return r + 1.0 / r


def perron_factor(U, variant: str = "capacity") -> float:
    """Supremum of perron_term over all admissible (k, l)."""
    value, _, _ = perron_factor_argmax(U, variant)
    return value


def perron_factor_argmax(U, variant: str = "capacity") -> tuple[float, int, int]:
    """Factor plus the lexicographically smallest attaining (k, l).

    A two-point sample returns (2.0, 0, 0): no pair attains it, the value
    is the arithmetic-progression floor.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    u = _values(U)
    n = len(u)
    if n < 2:
        raise ValueError("perron factor needs at least 2 points")
    if np.any(np.diff(u) <= 0.0):
        raise ValueError("sample is not strictly increasing")
    if n == 2:
        return 2.0, 0, 0

    best = -math.inf
    best_k = best_l = 0
    for l in range(1, (n - 1) // 2 + 1):
        k_lo = l if variant == "ordered" else 1
        k_hi = n - 2 * l
        if k_lo > k_hi:
            continue
        i = np.arange(k_lo - 1, k_hi)
        a = u[i + l] - u[i]
        b = u[i + 2 * l] - u[i + l]
        r = b / a
        t = r + 1.0 / r
        j = int(np.argmax(t))  # first max = smallest k for this l
        v = float(t[j])
        k = k_lo + j
        if v > best or (v == best and (k, l) < (best_k, best_l)):
            best, best_k, best_l = v, k, l
    return best, best_k, best_l


def perron_factor_batch(M, variant: str = "capacity") -> np.ndarray:
    """Factor of every row of a matrix of increasing samples."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    M = np.asarray(M, dtype=np.float64)
    n = M.shape[1]
    if n < 2:
        raise ValueError("perron factor needs at least 2 points")
    if n == 2:
        return np.full(M.shape[0], 2.0)
    best = np.full(M.shape[0], -np.inf)
    for l in range(1, (n - 1) // 2 + 1):
        k_lo = l if variant == "ordered" else 1
        k_hi = n - 2 * l
        if k_lo > k_hi:
            continue
        i = np.arange(k_lo - 1, k_hi)
        a = M[:, i + l] - M[:, i]
        b = M[:, i + 2 * l] - M[:, i + l]
        r = b / a
        t = r + 1.0 / r
        np.maximum(best, t.max(axis=1), out=best)
    return best


@dataclass(frozen=True)
class CapacityEstimate:
    """Per-N capacity value: exact infimum or heuristic upper bound."""

    N: int
    exact: bool
    value: float
    witness: tuple[float, ...]

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "exact": self.exact,
            "value": self.value,
            "witness": list(self.witness),
        }


def _check_universe(u: np.ndarray, N: int) -> int:
    if N < 1:
        raise ValueError("capacity order must be >= 1")
    size = 1 << N
    if len(u) < size:
        raise ValueError(f"universe smaller than 2^{N} = {size}")
    if np.any(np.diff(u) <= 0.0):
        raise ValueError("universe must be strictly increasing")
    return size


def capacity_exact_small(
    universe,
    N: int,
    variant: str = "capacity",
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> CapacityEstimate:
    """Exact infimum of the factor over all size-2^N subsets.

    Enumerates subsets in lexicographic order; ties keep the first witness,
    so results do not depend on how the work is partitioned.
    """
    u = _values(universe)
    size = _check_universe(u, N)
    total = math.comb(len(u), size)
    if total > budget:
        raise EnumerationBudgetError(
            f"C({len(u)}, {size}) = {total} exceeds budget {budget}"
        )
    best = math.inf
    best_subset: tuple[float, ...] = ()
    for idx in itertools.combinations(range(len(u)), size):
        sub = u[list(idx)]
        g = _factor_plain(sub, variant)
        if g < best:
            best = g
            best_subset = tuple(float(x) for x in sub)
    return CapacityEstimate(N, True, best, best_subset)


def _factor_plain(u: np.ndarray, variant: str) -> float:
    # hot path for enumeration: python loops beat numpy at these sizes
    n = len(u)
    if n == 2:
        return 2.0
    best = -math.inf
    for l in range(1, (n - 1) // 2 + 1):
        k_lo = l if variant == "ordered" else 1
        for k in range(k_lo, n - 2 * l + 1):
            a = u[k + l - 1] - u[k - 1]
            b = u[k + 2 * l - 1] - u[k + l - 1]
            r = b / a
            t = r + 1.0 / r
            if t > best:
                best = t
    return best


def _local_search(u: np.ndarray, idx: list[int], variant: str, budget: int) -> tuple[float, list[int]]:
    """Best-improvement 1-swap descent from the given index subset."""
    n = len(u)
    current = sorted(idx)
    g = _factor_plain(u[current], variant)
    evals = 0
    improved = True
    while improved and evals < budget:
        improved = False
        chosen = set(current)
        best_move = None
        for pos in range(len(current)):
            for cand in range(n):
                if cand in chosen:
                    continue
                trial = sorted(current[:pos] + current[pos + 1 :] + [cand])
                t = _factor_plain(u[trial], variant)
                evals += 1
                if t < g and (best_move is None or t < best_move[0]):
                    best_move = (t, trial)
                if evals >= budget:
                    break
            if evals >= budget:
                break
        if best_move is not None and best_move[0] < g:
            g, current = best_move
            improved = True
    return g, current


def capacity_search(
    universe,
    N: int,
    strategy: str = "swap-local-search",
    seed: int = 0,
    budget: int = 200_000,
    variant: str = "capacity",
    restarts: int = 24,
) -> CapacityEstimate:
    """Heuristic upper bound on the capacity; deterministic given the seed.

    ``greedy`` scans all consecutive windows of the ordered universe (an
    arithmetic progression always lives in a window).  ``swap-local-search``
    additionally runs seeded 1-swap descents from the greedy start and from
    random restarts.
    """
    if strategy not in ("greedy", "swap-local-search"):
        raise ValueError(f"unknown strategy {strategy!r}")
    u = _values(universe)
    size = _check_universe(u, N)
    n = len(u)

    best_g = math.inf
    best_idx: list[int] = []
    for start in range(n - size + 1):
        idx = list(range(start, start + size))
        g = _factor_plain(u[idx], variant)
        if g < best_g:
            best_g, best_idx = g, idx

    if strategy == "swap-local-search":
        rng = random.Random(seed)
        per_run = max(1, budget // (restarts + 1))
        g, idx = _local_search(u, best_idx, variant, per_run)
        if g < best_g:
            best_g, best_idx = g, idx
        for _ in range(restarts):
            start = sorted(rng.sample(range(n), size))
            g, idx = _local_search(u, start, variant, per_run)
            if g < best_g:
                best_g, best_idx = g, idx

    witness = tuple(float(x) for x in u[best_idx])
    return CapacityEstimate(N, False, best_g, witness)
