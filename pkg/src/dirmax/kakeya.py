"""Raster geometry: oriented rectangles, union measures, Perron trees, and
a discretized directional maximal operator.

Conventions
-----------
A rectangle's direction omega in [0, pi/2] is the angle between its longest
side and the Oy-axis; the long-axis unit vector is (sin omega, cos omega)
(omega = 0 points straight up) and length-translation moves the center by
one length along that vector.

Areas are pixel-counted on a RasterGrid (center-point inclusion test,
optional supersampling), the finite stand-in for Lebesgue measure; all
tolerances in callers budget on perimeter/resolution.

The maximal operator scans a fixed, documented rectangle family per pixel:
all directions given, lengths geometric with ratio 2 between the scale
bounds, the given aspect set, and 4x4 anchor fractions {0, 1/3, 2/3, 1}
placing the pixel inside the rectangle.  Endpoints in the anchor lattice
matter: they realize the off-center rectangles that witness the blow
inclusion.  The family under-approximates the true supremum, which is the
safe side for lower-bound checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .directions import DirectionSample


class GridEscapeError(ValueError):
    """A rectangle (or its translate) leaves the raster bounding box."""


@dataclass(frozen=True)
class OrientedRectangle:
    center: tuple[float, float]
    length: float
    width: float
    omega: float

    def __post_init__(self):
        if not self.length >= self.width > 0.0:
            raise ValueError("need length >= width > 0")
        if not 0.0 <= self.omega <= math.pi / 2.0:
            raise ValueError("omega must lie in [0, pi/2]")

    @property
    def axis_long(self) -> tuple[float, float]:
        return (math.sin(self.omega), math.cos(self.omega))

    @property
    def axis_short(self) -> tuple[float, float]:
        return (math.cos(self.omega), -math.sin(self.omega))

    @property
    def area(self) -> float:
        return self.length * self.width

    def corners(self) -> list[tuple[float, float]]:
        cx, cy = self.center
        ux, uy = self.axis_long
        vx, vy = self.axis_short
        hl, hw = self.length / 2.0, self.width / 2.0
        return [
            (cx + su * hl * ux + sv * hw * vx, cy + su * hl * uy + sv * hw * vy)
            for su in (-1.0, 1.0)
            for sv in (-1.0, 1.0)
        ]


def translate_along_length(r: OrientedRectangle) -> OrientedRectangle:
    """Same rectangle displaced by one length along its long axis."""
    ux, uy = r.axis_long
    cx, cy = r.center
    return OrientedRectangle(
        (cx + r.length * ux, cy + r.length * uy), r.length, r.width, r.omega
    )


@dataclass(frozen=True)
class RasterGrid:
    """Pixel lattice over [x0, x1] x [y0, y1] at `resolution` px per unit."""

    x0: float
    y0: float
    x1: float
    y1: float
    resolution: int

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolution must be >= 1 px/unit")
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("empty bounding box")

    @property
    def nx(self) -> int:
        return max(1, round((self.x1 - self.x0) * self.resolution))

    @property
    def ny(self) -> int:
        return max(1, round((self.y1 - self.y0) * self.resolution))

    @property
    def pixel_area(self) -> float:
        return 1.0 / self.resolution**2

    def pixel_centers(self) -> tuple[np.ndarray, np.ndarray]:
        step = 1.0 / self.resolution
        xs = self.x0 + (np.arange(self.nx) + 0.5) * step
        ys = self.y0 + (np.arange(self.ny) + 0.5) * step
        return xs, ys

    def contains_point(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


def grid_for(
    rects, resolution: int, pad: float = 0.25, include_translates: bool = False
) -> RasterGrid:
    """Smallest padded grid containing the family (and optionally translates)."""
    rs = list(rects)
    if include_translates:
        rs += [translate_along_length(r) for r in rs]
    pts = [p for r in rs for p in r.corners()]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return RasterGrid(
        min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad, resolution
    )


def _check_inside(r: OrientedRectangle, grid: RasterGrid):
    for x, y in r.corners():
        if not grid.contains_point(x, y):
            raise GridEscapeError(
                f"rectangle corner ({x:.6g}, {y:.6g}) escapes the grid"
            )


def rasterize(rects, grid: RasterGrid, supersample: int = 1) -> np.ndarray:
    """Boolean union mask; a pixel is set when at least half its
    supersample points fall in some rectangle (center test for ss=1)."""
    if supersample < 1:
        raise ValueError("supersample must be >= 1")
    mask = np.zeros((grid.ny, grid.nx), dtype=bool)
    step = 1.0 / grid.resolution
    offs = (np.arange(supersample) + 0.5) / supersample  # within-pixel fractions
    for r in rects:
        _check_inside(r, grid)
        xs_c = [p[0] for p in r.corners()]
        ys_c = [p[1] for p in r.corners()]
        ix0 = max(0, int((min(xs_c) - grid.x0) / step) - 1)
        ix1 = min(grid.nx, int((max(xs_c) - grid.x0) / step) + 2)
        iy0 = max(0, int((min(ys_c) - grid.y0) / step) - 1)
        iy1 = min(grid.ny, int((max(ys_c) - grid.y0) / step) + 2)
        if ix0 >= ix1 or iy0 >= iy1:
            continue
        xs = grid.x0 + (np.arange(ix0, ix1)[None, :] + 0.0) * step
        ys = grid.y0 + (np.arange(iy0, iy1)[:, None] + 0.0) * step
        ux, uy = r.axis_long
        vx, vy = r.axis_short
        cx, cy = r.center
        hl, hw = r.length / 2.0, r.width / 2.0
        votes = np.zeros((iy1 - iy0, ix1 - ix0), dtype=np.int32)
        for oy in offs:
            for ox in offs:
                px = xs + ox * step - cx
                py = ys + oy * step - cy
                inside = (np.abs(px * ux + py * uy) <= hl) & (
                    np.abs(px * vx + py * vy) <= hw
                )
                votes += inside
        need = (supersample * supersample + 1) // 2
        mask[iy0:iy1, ix0:ix1] |= votes >= need
    return mask


def union_measure(rects, grid: RasterGrid, supersample: int = 1) -> float:
    """Pixel-counted area of the union of the family."""
    mask = rasterize(rects, grid, supersample)
    return float(mask.sum()) * grid.pixel_area


def blow_ratio(rects, grid: RasterGrid, supersample: int = 1) -> float:
    """|union of translates| / |union of originals| on the same grid."""
    orig = union_measure(rects, grid, supersample)
    if orig == 0.0:
        raise ValueError("original family has zero raster measure")
    trans = union_measure([translate_along_length(r) for r in rects], grid, supersample)
    return trans / orig


def _direction_values(directions) -> list[float]:
    if isinstance(directions, DirectionSample):
        return list(directions.values)
    return [float(v) for v in directions]


def perron_tree(
    directions,
    base_length: float = 1.0,
    aspect: float = 32.0,
    alpha: float = 2.0 / 3.0,
) -> list[OrientedRectangle]:
    """Overlapping rectangle family in the given directions.

    Layout follows the classical bisection-and-overlap scheme: leaves start
    fanned out from a common virtual apex (anchors on the x-axis at
    H*tan(omega)), then sibling blocks are slid together level by level so
    each merged hull contracts to `alpha` times the sum of its parts.  The
    family's union shrinks as the direction count grows while the
    translated copies spread apart.
    """
    omegas = sorted(_direction_values(directions), reverse=True)
    n = len(omegas)
    if n < 1 or n & (n - 1):
        raise ValueError("need 2^J directions")
    if len(set(omegas)) != n:
        raise ValueError("directions must be pairwise distinct")
    if not all(0.0 <= w < math.pi / 2.0 for w in omegas):
        raise ValueError("tree layout requires directions in [0, pi/2)")
    if not 0.5 < alpha < 1.0:
        raise ValueError("alpha must lie in (1/2, 1)")
    length = float(base_length)
    width = length / float(aspect)
    height = length * math.cos(omegas[len(omegas) // 2])
    anchors = np.array([height * (math.tan(omegas[0]) - math.tan(w)) for w in omegas])
    cell = (anchors[-1] - anchors[0]) / (n - 1) if n > 1 else width

    def merge(lo: int, hi: int):
        if hi - lo == 1:
            return
        mid = (lo + hi) // 2
        merge(lo, mid)
        merge(mid, hi)
        span_l = anchors[lo:mid].max() - anchors[lo:mid].min() + cell
        span_r = anchors[mid:hi].max() - anchors[mid:hi].min() + cell
        target = alpha * (span_l + span_r)
        new_right_min = anchors[lo:mid].min() + target - span_r
        anchors[mid:hi] += new_right_min - anchors[mid:hi].min()

    merge(0, n)

    rects = []
    for x, w in zip(anchors, omegas):
        ux, uy = math.sin(w), math.cos(w)
        center = (x + 0.5 * length * ux, 0.5 * length * uy)
        rects.append(OrientedRectangle(center, length, width, w))
    return rects


@dataclass(frozen=True)
class MaxField:
    """Per-pixel value of the discretized directional maximal average."""

    values: np.ndarray
    grid: RasterGrid
    family: dict = field(default_factory=dict)

    def fraction_at_least(self, threshold: float, region: np.ndarray | None = None) -> float:
        """Fraction of (region) pixels whose field value reaches threshold."""
        sel = self.values >= threshold
        if region is None:
            return float(sel.mean())
        total = int(region.sum())
        if total == 0:
            raise ValueError("empty region")
        return float((sel & region).sum()) / total


def _bilinear(img: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Sample img at fractional (row, col); outside contributes 0."""
    ny, nx = img.shape
    r0 = np.floor(rows).astype(np.int64)
    c0 = np.floor(cols).astype(np.int64)
    fr = rows - r0
    fc = cols - c0
    out = np.zeros(rows.shape, dtype=np.float64)
    for dr, dc, wgt in (
        (0, 0, (1 - fr) * (1 - fc)),
        (0, 1, (1 - fr) * fc),
        (1, 0, fr * (1 - fc)),
        (1, 1, fr * fc),
    ):
        rr = r0 + dr
        cc = c0 + dc
        ok = (rr >= 0) & (rr < ny) & (cc >= 0) & (cc < nx)
        vals = np.zeros(rows.shape, dtype=np.float64)
        vals[ok] = img[rr[ok], cc[ok]]
        out += wgt * vals
    return out


def _box_mean(num: np.ndarray, den: np.ndarray, n_rows: int, n_cols: int) -> np.ndarray:
    """Mean of num/den over n_rows x n_cols boxes, zero outside support."""
    lo_r, hi_r = (n_rows - 1) // 2, n_rows - 1 - (n_rows - 1) // 2
    lo_c, hi_c = (n_cols - 1) // 2, n_cols - 1 - (n_cols - 1) // 2

    def boxsum(a):
        s = np.zeros((a.shape[0] + 1, a.shape[1] + 1))
        s[1:, 1:] = a.cumsum(axis=0).cumsum(axis=1)
        ny, nx = a.shape
        r0 = np.clip(np.arange(ny) - lo_r, 0, ny)
        r1 = np.clip(np.arange(ny) + hi_r + 1, 0, ny)
        c0 = np.clip(np.arange(nx) - lo_c, 0, nx)
        c1 = np.clip(np.arange(nx) + hi_c + 1, 0, nx)
        return s[r1][:, c1] - s[r0][:, c1] - s[r1][:, c0] + s[r0][:, c0]

    top = boxsum(num)
    bot = boxsum(den)
    out = np.zeros_like(top)
    nz = bot > 0.0
    out[nz] = top[nz] / bot[nz]
    return np.clip(out, 0.0, 1.0)


def _shift_axis(a: np.ndarray, s: int, axis: int) -> np.ndarray:
    """Translate along one axis with zero fill (reads from index + s)."""
    out = np.zeros_like(a)
    n = a.shape[axis]
    src = slice(max(0, s), min(n, n + s))
    dst = slice(max(0, -s), min(n, n - s))
    idx_src = [slice(None)] * a.ndim
    idx_dst = [slice(None)] * a.ndim
    idx_src[axis] = src
    idx_dst[axis] = dst
    out[tuple(idx_dst)] = a[tuple(idx_src)]
    return out


def _onesided_max(a: np.ndarray, reach: int, axis: int, sign: int) -> np.ndarray:
    """Running max over offsets sign*{0..reach} along an axis (doubling)."""
    f = a
    m = 0
    while m < reach:
        s = min(m + 1, reach - m)
        f = np.maximum(f, _shift_axis(f, sign * s, axis))
        m += s
    return f


def _window_max(a: np.ndarray, neg: int, pos: int, axis: int) -> np.ndarray:
    """Max over offsets in [-neg, pos] along an axis."""
    return _onesided_max(_onesided_max(a, pos, axis, +1), neg, axis, -1)


def discrete_max_op(
    mask: np.ndarray,
    grid: RasterGrid,
    directions,
    length_min: float,
    length_max: float,
    aspects=(8.0,),
) -> MaxField:
    """Per-pixel maximum of rectangle averages of the mask.

    The rectangle family is fixed and fully documented: every direction
    given, lengths length_min, 2*length_min, ... capped at length_max,
    each aspect given, and every position of the rectangle that contains
    the pixel, discretized to the pixel lattice (a sliding-window maximum
    in the rectangle's own frame).  Averages are taken over the
    rectangle's intersection with the grid.  The family is finite, so the
    field under-approximates the true supremum: the safe side when
    checking lower-bound inclusions.
    """
    omegas = _direction_values(directions)
    if not omegas:
        raise ValueError("direction set must be nonempty")
    if not (0.0 < length_min <= length_max):
        raise ValueError("need 0 < length_min <= length_max")
    lengths = []
    L = float(length_min)
    while L <= length_max * (1.0 + 1e-12):
        lengths.append(L)
        L *= 2.0
    res = grid.resolution
    maskf = mask.astype(np.float64)
    ones = np.ones_like(maskf)

    # world pixel-center coordinates of the target field
    xs, ys = grid.pixel_centers()
    PX, PY = np.meshgrid(xs, ys)

    out = np.zeros((grid.ny, grid.nx), dtype=np.float64)
    for w in omegas:
        ux, uy = math.sin(w), math.cos(w)  # long axis
        vx, vy = math.cos(w), -math.sin(w)  # short axis
        # q-frame: q1 along short axis (cols), q2 along long axis (rows)
        corners = [(grid.x0, grid.y0), (grid.x0, grid.y1), (grid.x1, grid.y0), (grid.x1, grid.y1)]
        q1s = [cx * vx + cy * vy for cx, cy in corners]
        q2s = [cx * ux + cy * uy for cx, cy in corners]
        q1_lo, q1_hi = min(q1s), max(q1s)
        q2_lo, q2_hi = min(q2s), max(q2s)
        n1 = int(math.ceil((q1_hi - q1_lo) * res)) + 1
        n2 = int(math.ceil((q2_hi - q2_lo) * res)) + 1
        q1 = q1_lo + (np.arange(n1) + 0.5) / res
        q2 = q2_lo + (np.arange(n2) + 0.5) / res
        Q1, Q2 = np.meshgrid(q1, q2)
        wx = Q1 * vx + Q2 * ux  # world coords of q-canvas samples
        wy = Q1 * vy + Q2 * uy
        rows = (wy - grid.y0) * res - 0.5
        cols = (wx - grid.x0) * res - 0.5
        canvas_num = _bilinear(maskf, rows, cols)
        canvas_den = _bilinear(ones, rows, cols)

        # q-coordinates of target pixels, as fractional canvas indices
        t_rows = ((PX * ux + PY * uy) - q2_lo) * res - 0.5
        t_cols = ((PX * vx + PY * vy) - q1_lo) * res - 0.5

        for L in lengths:
            for A in aspects:
                wdt = L / float(A)
                n_rows = max(1, round(L * res))
                n_cols = max(1, round(wdt * res))
                centered = _box_mean(canvas_num, canvas_den, n_rows, n_cols)
                # a box covering rows [c-lo, c+hi] contains the pixel when
                # its center lies within [-hi, lo] of it
                lo_r, hi_r = (n_rows - 1) // 2, n_rows - 1 - (n_rows - 1) // 2
                lo_c, hi_c = (n_cols - 1) // 2, n_cols - 1 - (n_cols - 1) // 2
                best_q = _window_max(centered, hi_r, lo_r, axis=0)
                best_q = _window_max(best_q, hi_c, lo_c, axis=1)
                np.maximum(out, _bilinear(best_q, t_rows, t_cols), out=out)

    meta = {
        "lengths": lengths,
        "aspects": [float(a) for a in aspects],
        "positions": "all pixel-lattice placements containing the pixel",
        "directions": [float(w) for w in omegas],
    }
    return MaxField(np.clip(out, 0.0, 1.0), grid, meta)
