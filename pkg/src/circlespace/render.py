"""Static SVG figures of leaves via stereographic projection from ``x = -1``."""

import colorsys
import xml.etree.ElementTree as ET
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class RenderOptions:
    view: tuple = (1.0, 0.6, 0.35)    # orthographic viewing direction in R^3
    size: int = 640
    margin: float = 20.0
    pole_cut: float = 0.05            # samples with |1 + x0| below this are dropped
    extent: float | None = None       # half-width of the shown region; None fits all points
    stroke_width: float = 1.2
    background: str | None = "white"


def stereographic(x):
    """``(x1, x2, x3) / (1 + x0)``."""
    x = np.asarray(x, dtype=float)
    return x[..., 1:] / (1.0 + x[..., :1])


def view_frame(view):
    """Orthonormal screen axes ``(right, up)`` perpendicular to ``view``."""
    d = np.asarray(view, dtype=float)
    d = d / np.linalg.norm(d)
    up0 = np.array([0.0, 0.0, 1.0]) if abs(d[2]) < 0.9 else np.array([0.0, 1.0, 0.0])
    right = np.cross(up0, d)
    right /= np.linalg.norm(right)
    return right, np.cross(d, right)


def split_at_pole(samples, closed, cut=0.05):
    """Runs of consecutive samples away from the pole, as index arrays.

    For a closed leaf a run touching the end continues into the run at the
    start.  Returns ``(runs, wraps)`` where ``wraps`` is True when the leaf
    never comes near the pole and should be drawn as a closed path.
    """
    keep = np.abs(1.0 + samples[:, 0]) >= cut
    if keep.all():
        return [np.arange(len(samples))], closed
    idx = np.flatnonzero(keep)
    if len(idx) == 0:
        return [], False
    breaks = np.flatnonzero(np.diff(idx) > 1) + 1
    runs = np.split(idx, breaks)
    if closed and len(runs) > 1 and runs[0][0] == 0 and runs[-1][-1] == len(samples) - 1:
        runs = [np.concatenate([runs[-1], runs[0]])] + runs[1:-1]
    return [r for r in runs if len(r) >= 2], False


def _fmt(v):
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def render_svg(leaves, options=None, params=None):
    """SVG document (a string) with one path per leaf piece.

    ``params`` gives each leaf a base parameter in [0, 1) that sets its hue;
    by default leaves are spread evenly in the order given.
    """
    opt = options or RenderOptions()
    leaves = list(leaves)
    if not leaves:
        raise EmptyInput("no leaves to render")
    if params is None:
        params = np.arange(len(leaves)) / len(leaves)
    right, up = view_frame(opt.view)

    pieces = []
    for leaf, t in zip(leaves, params):
        samples = np.asarray(leaf.samples, dtype=float)
        runs, wraps = split_at_pole(samples, leaf.closed, opt.pole_cut)
        if leaf.closed and wraps and len(samples) > 1:
            # the last sample repeats the seed
            runs = [runs[0][:-1]]
        with np.errstate(divide="ignore", invalid="ignore"):
            # samples at the pole are dropped by the runs
            p3 = stereographic(samples)
        p2 = np.stack([p3 @ right, p3 @ up], axis=-1)
        for r in runs:
            pieces.append((p2[r], wraps, float(t)))
    if not pieces:
        raise EmptyInput("every sample lies at the projection pole")

    if opt.extent is None:
        extent = max(float(np.max(np.abs(p))) for p, _, _ in pieces) or 1.0
    else:
        extent = float(opt.extent)
    half = opt.size / 2
    scale = (half - opt.margin) / extent

    ET.register_namespace("", SVG_NS)
    svg = ET.Element(f"{{{SVG_NS}}}svg", {
        "width": str(opt.size), "height": str(opt.size),
        "viewBox": f"0 0 {opt.size} {opt.size}"})
    if opt.background:
        ET.SubElement(svg, f"{{{SVG_NS}}}rect", {
            "width": "100%", "height": "100%", "fill": opt.background})
    g = ET.SubElement(svg, f"{{{SVG_NS}}}g", {
        "fill": "none", "stroke-width": _fmt(opt.stroke_width),
        "stroke-linejoin": "round", "stroke-linecap": "round"})
    for pts, wraps, t in pieces:
        sx = half + scale * pts[:, 0]
        sy = half - scale * pts[:, 1]
        d = "M" + " L".join(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(sx, sy))
        if wraps:
            d += " Z"
        r, gr, b = colorsys.hsv_to_rgb(t % 1.0, 0.75, 0.85)
        color = f"#{round(255 * r):02x}{round(255 * gr):02x}{round(255 * b):02x}"
        ET.SubElement(g, f"{{{SVG_NS}}}path", {"d": d, "stroke": color})
    return ET.tostring(svg, encoding="unicode", xml_declaration=True)
