"""SVG figures in the disk model.

Geodesics are drawn as circular arcs orthogonal to the unit circle (lines
through the origin as straight segments).  Screen y runs downward, so points
are drawn at (x, -y).  All numbers are printed with six decimals; output for
a given scene is byte-identical across runs.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .geodesics import Geodesic
from .moebius import is_inf, translate_to_origin

STYLES = {
    "axis": "fill:none;stroke:#1f3a60;stroke-width:0.008",
    "reflectionLine": "fill:none;stroke:#8fb0d8;stroke-width:0.005",
    "domainFill": "fill:#f3d9a4;fill-opacity:0.5;stroke:#7a5a1e;stroke-width:0.004",
    "tiling": "fill:none;stroke:#777777;stroke-width:0.002",
    "weierstrass": "fill:#b3261e;stroke:none",
}
MARKER_RADIUS = 0.01


@dataclass
class Layer:
    style: str
    geodesics: list = field(default_factory=list)     # Geodesic
    segments: list = field(default_factory=list)      # (z, w)
    points: list = field(default_factory=list)        # z
    polygons: list = field(default_factory=list)      # (vertices, sides) as in HyperPolygon


@dataclass
class Scene:
    layers: list = field(default_factory=list)
    title: str = ""


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _xy(z: complex) -> str:
    return f"{_f(z.real)} {_f(-z.imag)}"


def _sweep(p: complex, m: complex, q: complex) -> int:
    """SVG sweep flag for the arc p -> m -> q (screen coordinates, y down)."""
    a, b, c = complex(p.real, -p.imag), complex(m.real, -m.imag), complex(q.real, -q.imag)
    cross = ((b - a).real * (c - b).imag - (b - a).imag * (c - b).real)
    return 1 if cross > 0 else 0


def _circumradius(a: complex, b: complex, c: complex):
    d = 2 * (a.real * (b.imag - c.imag) + b.real * (c.imag - a.imag) + c.real * (a.imag - b.imag))
    if abs(d) < 1e-12:
        return None
    ux = (abs(a) ** 2 * (b.imag - c.imag) + abs(b) ** 2 * (c.imag - a.imag)
          + abs(c) ** 2 * (a.imag - b.imag)) / d
    uy = (abs(a) ** 2 * (c.real - b.real) + abs(b) ** 2 * (a.real - c.real)
          + abs(c) ** 2 * (b.real - a.real)) / d
    r = abs(a - complex(ux, uy))
    return r if r < 1e4 else None


def _midpoint(a: complex, b: complex) -> complex:
    """A point of the geodesic segment [a, b] strictly between its ends."""
    if abs(a) >= 1 - 1e-12 and abs(b) >= 1 - 1e-12:
        return Geodesic(cmath.phase(a), cmath.phase(b)).foot()
    if abs(a) >= 1 - 1e-12:
        a, b = b, a
    T = translate_to_origin(a)
    w = T(b)
    u = w / abs(w)
    r = abs(w)
    # hyperbolic midpoint of [0, w] on the ray towards u
    t = math.atanh(min(r, 1 - 1e-16)) / 2
    return T.inverse()(u * math.tanh(t))


def _arc_cmd(a: complex, b: complex) -> str:
    if abs(a - b) < 1e-9:
        # far below the printed resolution; deep tiles shrink sides to this
        return f"L {_xy(b)}"
    m = _midpoint(a, b)
    r = _circumradius(a, m, b)
    if r is None:
        return f"L {_xy(b)}"
    return f"A {_f(r)} {_f(r)} 0 0 {_sweep(a, m, b)} {_xy(b)}"


def _boundary_arc_cmd(a: complex, b: complex) -> str:
    span = (cmath.phase(b) - cmath.phase(a)) % (2 * math.pi)
    large = 1 if span > math.pi else 0
    # counterclockwise in the plane is counterclockwise on screen after the flip: sweep 0
    return f"A 1.000000 1.000000 0 {large} 0 {_xy(b)}"


def geodesic_path(g: Geodesic) -> str:
    e1, e2 = g.endpoints
    return f"M {_xy(e1)} {_arc_cmd(e1, e2)}"


def segment_path(a: complex, b: complex) -> str:
    return f"M {_xy(a)} {_arc_cmd(a, b)}"


def polygon_path(vertices, sides) -> str:
    n = len(vertices)
    cmds = [f"M {_xy(vertices[0])}"]
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        if sides[i].carrier is None:
            cmds.append(_boundary_arc_cmd(a, b))
        else:
            cmds.append(_arc_cmd(a, b))
    return " ".join(cmds) + " Z"


def render_svg(scene: Scene) -> bytes:
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.1 -1.1 2.2 2.2">']
    if scene.title:
        out.append(f"<title>{scene.title}</title>")
    out.append('<circle cx="0" cy="0" r="1" style="fill:none;stroke:#000000;stroke-width:0.006"/>')
    for layer in scene.layers:
        style = STYLES[layer.style]
        out.append(f'<g class="{layer.style}" style="{style}">')
        for verts, sides in layer.polygons:
            out.append(f'<path d="{polygon_path(verts, sides)}"/>')
        for g in layer.geodesics:
            out.append(f'<path d="{geodesic_path(g)}"/>')
        for a, b in layer.segments:
            out.append(f'<path d="{segment_path(a, b)}"/>')
        for z in layer.points:
            if is_inf(z) or abs(z) > 1.1:
                continue
            out.append(f'<circle cx="{_f(z.real)}" cy="{_f(-z.imag)}" r="{MARKER_RADIUS}"/>')
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
