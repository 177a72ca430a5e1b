"""Lacunary sequences and certificate-based verification of lacunary order.

A sequence l_1, l_2, ... is lacunary toward a limit l with ratio lam in
(0,1) when |l - l_{k+1}| <= lam * |l - l_k| for every consecutive pair.

A set is lacunary of order 0 when empty or a singleton; of order at most
N+1 when some lacunary skeleton L exists such that between any two
consecutive points of L the set restricted to that open gap is lacunary of
order at most N.  Certificates supply the skeletons explicitly and this
module only verifies them: for finite truncations certificate *search* is
trivially satisfiable and says nothing about the infinite-set question.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass


class MalformedCertificateError(ValueError):
    """Certificate structure cannot be interpreted against the set."""


def is_lacunary_sequence(seq, limit: float, lam: float) -> bool:
    """Check |limit - seq[k+1]| <= lam * |limit - seq[k]| for all k."""
    if not 0.0 < lam < 1.0:
        raise ValueError("lambda must lie in (0, 1)")
    seq = list(seq)
    if not seq:
        raise ValueError("sequence must be nonempty")
    gaps = [abs(limit - x) for x in seq]
    return all(b <= lam * a for a, b in zip(gaps, gaps[1:]))


@dataclass(frozen=True)
class LacunaryCertificate:
    """Skeleton witness for one order level.

    ``children`` has one entry per consecutive gap of the *sorted* skeleton
    (length = len(skeleton) - 1).  An entry may be None, which claims the
    gap's intersection is empty or a singleton.  ``skeleton`` is given in
    sequence order (converging toward ``limit``); sorting happens here.
    """

    limit: float
    lam: float
    skeleton: tuple[float, ...]
    children: tuple["LacunaryCertificate | None", ...] = ()

    @staticmethod
    def from_json(obj: dict | None) -> "LacunaryCertificate | None":
        if obj is None:
            return None
        children = tuple(
            LacunaryCertificate.from_json(c) for c in obj.get("children", [])
        )
        return LacunaryCertificate(
            limit=float(obj["limit"]),
            lam=float(obj["lambda"]),
            skeleton=tuple(float(x) for x in obj["skeleton"]),
            children=children,
        )

    def to_json(self) -> dict:
        return {
            "limit": self.limit,
            "lambda": self.lam,
            "skeleton": list(self.skeleton),
            "children": [c.to_json() if c else None for c in self.children],
        }


def verify_order_certificate(
    omega,
    cert: LacunaryCertificate | None,
    N: int,
) -> bool:
    """True iff `cert` witnesses that the finite set omega has order <= N.

    Returns False on a failed lacunarity or order claim; raises
    MalformedCertificateError when the certificate cannot be matched to the
    set at all (wrong children count, uncovered points, depth below zero).
    """
    if N < 0:
        raise MalformedCertificateError("claimed order must be >= 0")
    points = sorted(set(omega))
    return _verify(points, cert, N)


def _verify(points: list[float], cert, N: int) -> bool:
    if cert is None:
        # order-0 claim; valid at any N by monotonicity of "order at most"
        return len(points) <= 1
    if N == 0:
        raise MalformedCertificateError(
            "non-trivial certificate at claimed order 0 (depth mismatch)"
        )
    skeleton = sorted(cert.skeleton)
    if len(skeleton) < 2:
        raise MalformedCertificateError("skeleton needs at least 2 points")
    if len(cert.children) != len(skeleton) - 1:
        raise MalformedCertificateError(
            f"expected {len(skeleton) - 1} children, got {len(cert.children)}"
        )
    if not is_lacunary_sequence(cert.skeleton, cert.limit, cert.lam):
        return False

    skel_set = set(skeleton)
    gaps: list[list[float]] = [[] for _ in cert.children]
    for x in points:
        if x in skel_set:
            continue
        if x <= skeleton[0] or x >= skeleton[-1]:
            raise MalformedCertificateError(
                f"point {x} not covered by the skeleton span"
            )
        # rightmost gap start below x
        lo = bisect.bisect_left(skeleton, x) - 1
        gaps[lo].append(x)

    return all(_verify(g, child, N - 1) for g, child in zip(gaps, cert.children))


def chain_certificate(points, limit: float, lam: float) -> LacunaryCertificate:
    """Order-1 certificate using the set itself as skeleton.

    Valid whenever the sorted points, walked toward the limit, form a
    lacunary sequence; gaps are then empty.  Finite sets always admit some
    such certificate for lam close enough to 1, which is why search is out
    of scope here.
    """
    pts = sorted(set(points))
    if len(pts) < 2:
        raise ValueError("need at least 2 points for a chain skeleton")
    seq = pts if abs(limit - pts[0]) >= abs(limit - pts[-1]) else pts[::-1]
    return LacunaryCertificate(
        limit=limit,
        lam=lam,
        skeleton=tuple(seq),
        children=(None,) * (len(pts) - 1),
    )


def tightest_chain_ratio(points, limit: float) -> float:
    """Smallest lam for which chain_certificate(points, limit, lam) verifies.

    Nudged up by ulps where the rounded quotient b/a under-multiplies, so
    the returned value always satisfies b <= lam * a in floats.
    """
    pts = sorted(set(points))
    seq = pts if abs(limit - pts[0]) >= abs(limit - pts[-1]) else pts[::-1]
    gaps = [abs(limit - x) for x in seq]
    if len(gaps) < 2 or any(a == 0.0 for a in gaps[:-1]):
        raise ValueError("degenerate chain (limit coincides with a point)")
    lam = max(b / a for a, b in zip(gaps, gaps[1:]))
    while any(b > lam * a for a, b in zip(gaps, gaps[1:])):
        lam = math.nextafter(lam, 1.0)
    return lam
