"""Deterministic report, table, and figure emission.

Reports are canonical JSON (sorted keys, fixed separators, shortest
round-trip floats) so identical configs and seeds reproduce identical
bytes; the checksum covers everything except the timing block.  SVG and
PGM writers are hand-rolled string/byte builders for the same reason.
"""

from __future__ import annotations

import hashlib
import json
import os

import numpy as np

from .kakeya import OrientedRectangle, RasterGrid

TOOL_NAME = "dirmax"
TOOL_VERSION = "0.1.0"


def load_report_schema() -> dict:
    """The published JSON schema every --json report conforms to."""
    path = os.path.join(os.path.dirname(__file__), "report.schema.json")
    with open(path) as fh:
        return json.load(fh)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def report_checksum(body: dict) -> str:
    core = {k: v for k, v in body.items() if k not in ("timing", "checksum")}
    return hashlib.sha256(canonical_json(core).encode()).hexdigest()


def build_report(command: str, config: dict, results: dict, checks: list[dict]) -> dict:
    """Assemble the common report body and stamp its checksum."""
    body = {
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "command": command,
        "config": config,
        "results": results,
        "checks": checks,
        "passed": all(c["pass"] for c in checks),
    }
    body["checksum"] = report_checksum(body)
    return body


def check_row(name: str, passed: bool, analytic=None, observed=None,
              tolerance=None, stderr=None) -> dict:
    row = {"name": name, "pass": bool(passed)}
    if analytic is not None:
        row["analytic"] = analytic
    if observed is not None:
        row["observed"] = observed
    if stderr is not None:
        row["stderr"] = stderr
    if tolerance is not None:
        row["tolerance"] = tolerance
    return row


def write_json(path: str, body: dict):
    with open(path, "w") as fh:
        fh.write(canonical_json(body))
        fh.write("\n")


def checks_csv(checks: list[dict]) -> str:
    lines = ["name,analytic,empirical,stderr,tolerance,pass"]
    for c in checks:
        lines.append(
            "{},{},{},{},{},{}".format(
                c["name"],
                _csv_num(c.get("analytic")),
                _csv_num(c.get("observed")),
                _csv_num(c.get("stderr")),
                _csv_num(c.get("tolerance")),
                "pass" if c["pass"] else "fail",
            )
        )
    return "\n".join(lines) + "\n"


def _csv_num(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def sample_csv(rows) -> str:
    lines = ["index,value"]
    for idx, val in rows:
        lines.append(f"{idx},{val!r}")
    return "\n".join(lines) + "\n"


def fmt17(x: float) -> str:
    """17 significant digits: enough to round-trip a double."""
    return format(x, ".17g")


# ---------------------------------------------------------------- PGM / SVG


def write_pgm(path: str, mask_or_field: np.ndarray):
    """Binary PGM (P5); booleans map to {0, 255}, floats scale [0,1]."""
    a = np.asarray(mask_or_field)
    if a.dtype == bool:
        img = np.where(a, 255, 0).astype(np.uint8)
    else:
        img = np.clip(np.round(a * 255.0), 0, 255).astype(np.uint8)
    img = img[::-1]  # raster rows top-down, grid rows bottom-up
    with open(path, "wb") as fh:
        fh.write(f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode())
        fh.write(img.tobytes())


def _svg_header(width: float, height: float) -> str:
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2f}" '
        f'height="{height:.2f}" viewBox="0 0 {width:.2f} {height:.2f}">\n'
    )


def _pt(x: float, y: float) -> str:
    return f"{x:.4f},{y:.4f}"


class SvgCanvas:
    """Tiny deterministic SVG builder with a y-up world-to-page transform."""

    def __init__(self, x0, y0, x1, y1, scale=400.0, margin=10.0):
        self.x0, self.y0 = x0, y0
        self.scale = scale
        self.margin = margin
        self.width = (x1 - x0) * scale + 2 * margin
        self.height = (y1 - y0) * scale + 2 * margin
        self._y1 = y1
        self.parts = [_svg_header(self.width, self.height)]

    def map(self, x: float, y: float) -> tuple[float, float]:
        return (
            self.margin + (x - self.x0) * self.scale,
            self.margin + (self._y1 - y) * self.scale,
        )

    def polygon(self, pts, stroke="#333333", fill="none", opacity=1.0, width=1.0):
        mapped = " ".join(_pt(*self.map(x, y)) for x, y in pts)
        self.parts.append(
            f'<polygon points="{mapped}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{width:.2f}" opacity="{opacity:.3f}"/>\n'
        )

    def rect_world(self, x, y, w, h, fill="#dddddd", stroke="none", opacity=1.0):
        px, py = self.map(x, y + h)
        self.parts.append(
            f'<rect x="{px:.4f}" y="{py:.4f}" width="{w * self.scale:.4f}" '
            f'height="{h * self.scale:.4f}" fill="{fill}" stroke="{stroke}" '
            f'opacity="{opacity:.3f}"/>\n'
        )

    def circle(self, x, y, r_px=2.0, fill="#cc3333"):
        px, py = self.map(x, y)
        self.parts.append(
            f'<circle cx="{px:.4f}" cy="{py:.4f}" r="{r_px:.2f}" fill="{fill}"/>\n'
        )

    def line(self, x0, y0, x1, y1, stroke="#888888", width=1.0):
        p0 = self.map(x0, y0)
        p1 = self.map(x1, y1)
        self.parts.append(
            f'<line x1="{p0[0]:.4f}" y1="{p0[1]:.4f}" x2="{p1[0]:.4f}" '
            f'y2="{p1[1]:.4f}" stroke="{stroke}" stroke-width="{width:.2f}"/>\n'
        )

    def render(self) -> str:
        return "".join(self.parts) + "</svg>\n"


def svg_direction_scatter(values, path: str):
    """Angles on a horizontal axis (log-scaled index is left to callers)."""
    vals = list(values)
    lo, hi = min(vals), max(vals)
    pad = (hi - lo) * 0.05 or 1.0
    c = SvgCanvas(lo - pad, -0.1, hi + pad, 0.1, scale=600.0 / (hi - lo + 2 * pad))
    c.line(lo - pad, 0.0, hi + pad, 0.0)
    for v in vals:
        c.circle(v, 0.0, r_px=2.5)
    with open(path, "w") as fh:
        fh.write(c.render())


def svg_dyadic_filling(report_aux: dict, N: int, path: str):
    """Shaded subintervals of the found I_d with the witness points."""
    d = 0 if report_aux.get("normalized") else report_aux["d"]
    frac = 1 << N
    lo, hi = 2.0**d, 2.0 ** (d + 1)
    c = SvgCanvas(lo, -0.15 * (hi - lo), hi, 0.15 * (hi - lo), scale=700.0 / (hi - lo))
    for l in range(1, frac + 1):
        a = lo + (l - 1) * (hi - lo) / frac
        shade = "#e8f0fe" if l % 2 else "#c6dafc"
        c.rect_world(a, -0.05 * (hi - lo), (hi - lo) / frac, 0.1 * (hi - lo), fill=shade)
    c.line(lo, 0.0, hi, 0.0)
    for entry in report_aux["subinterval_points"]:
        c.circle(entry["u"], 0.0, r_px=3.0)
    with open(path, "w") as fh:
        fh.write(c.render())


def svg_rectangle_families(
    originals: list[OrientedRectangle],
    translates: list[OrientedRectangle],
    path: str,
    level_set: tuple[RasterGrid, np.ndarray] | None = None,
):
    """Outlines of a family and its translates, optionally over a level set."""
    pts = [p for r in originals + translates for p in r.corners()]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys))
    c = SvgCanvas(
        min(xs) - pad,
        min(ys) - pad,
        max(xs) + pad,
        max(ys) + pad,
        scale=700.0 / (max(xs) - min(xs) + 2 * pad),
    )
    if level_set is not None:
        grid, sel = level_set
        step = 1.0 / grid.resolution
        rows, cols = np.nonzero(sel)
        for r_i, c_i in zip(rows.tolist(), cols.tolist()):
            c.rect_world(grid.x0 + c_i * step, grid.y0 + r_i * step, step, step,
                         fill="#ffe8cc")
    for r in originals:
        c.polygon(_corner_cycle(r), stroke="#1a5fb4")
    for r in translates:
        c.polygon(_corner_cycle(r), stroke="#c01c28")
    with open(path, "w") as fh:
        fh.write(c.render())


def _corner_cycle(r: OrientedRectangle) -> list[tuple[float, float]]:
    a, b, c, d = r.corners()  # (-l,-w), (-l,+w), (+l,-w), (+l,+w)
    return [a, b, d, c]
