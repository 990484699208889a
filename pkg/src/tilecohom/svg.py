"""Deterministic SVG drawings of star classes.

One document per star class: tile outlines from the floating embedding,
an orientation arrow inside each tile, and the class annotations (rho for
edge stars, winding number and symmetry order for vertex stars).  Output
is byte-reproducible: fixed precision, no timestamps.
"""

from __future__ import annotations

from fractions import Fraction

from . import cyclotomic as cyc
from .atlas import StarAtlas, StarClass


def _fmt(x: float) -> str:
    out = f"{x:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _tile_points(system, tile):
    return [cyc.embed_coeffs(system.n, p) for p in system.placed_vertices(tile)]


def _polygon(points, fill):
    pts = " ".join(f"{_fmt(z.real)},{_fmt(-z.imag)}" for z in points)
    return (
        f'<polygon points="{pts}" fill="{fill}" stroke="#333333" '
        f'stroke-width="0.02"/>'
    )


def _arrow(system, tile):
    points = _tile_points(system, tile)
    cx = sum(z.real for z in points) / len(points)
    cy = sum(z.imag for z in points) / len(points)
    direction = cyc.embed_coeffs(
        system.n, cyc.rotate_coeffs(system.n, cyc.one_coeffs(system.n), tile.rot)
    )
    tip = complex(cx, cy) + 0.22 * direction
    base = complex(cx, cy) - 0.10 * direction
    left = tip - 0.12 * direction * complex(0.8, 0.35)
    right = tip - 0.12 * direction * complex(0.8, -0.35)
    path = (
        f"M{_fmt(base.real)},{_fmt(-base.imag)} L{_fmt(tip.real)},{_fmt(-tip.imag)} "
        f"M{_fmt(left.real)},{_fmt(-left.imag)} L{_fmt(tip.real)},{_fmt(-tip.imag)} "
        f"L{_fmt(right.real)},{_fmt(-right.imag)}"
    )
    return f'<path d="{path}" stroke="#aa2222" stroke-width="0.035" fill="none"/>'

_PALETTE = ["#cfe8ff", "#ffe9c7", "#d8f5d3", "#f3d9f2", "#fff7b1", "#dedede"]


def _document(system, cls: StarClass, caption: str) -> str:
    pieces = []
    xs, ys = [], []
    for tile in cls.patch.tiles:
        pts = _tile_points(system, tile)
        xs.extend(z.real for z in pts)
        ys.extend(-z.imag for z in pts)
        pieces.append(_polygon(pts, _PALETTE[tile.proto % len(_PALETTE)]))
        pieces.append(_arrow(system, tile))
    if cls.kind == "edge":
        za = cyc.embed_coeffs(system.n, cls.tail)
        zb = cyc.embed_coeffs(system.n, cls.head)
        pieces.append(
            f'<line x1="{_fmt(za.real)}" y1="{_fmt(-za.imag)}" '
            f'x2="{_fmt(zb.real)}" y2="{_fmt(-zb.imag)}" '
            f'stroke="#0044cc" stroke-width="0.05"/>'
        )
    if cls.kind == "vertex":
        zc = cyc.embed_coeffs(system.n, cls.center[1])
        pieces.append(
            f'<circle cx="{_fmt(zc.real)}" cy="{_fmt(-zc.imag)}" r="0.07" '
            f'fill="#0044cc"/>'
        )
    lo_x, hi_x = min(xs) - 0.4, max(xs) + 0.4
    lo_y, hi_y = min(ys) - 0.6, max(ys) + 0.4
    label = (
        f'<text x="{_fmt(lo_x + 0.1)}" y="{_fmt(hi_y - 0.1)}" '
        f'font-size="0.3" font-family="monospace">{caption}</text>'
    )
    body = "\n".join(pieces + [label])
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(lo_x)} {_fmt(lo_y)} '
        f'{_fmt(hi_x - lo_x)} {_fmt(hi_y - lo_y)}">\n{body}\n</svg>\n'
    )


def render_star_svg(atlas: StarAtlas, rho=None, omega=None) -> dict[str, str]:
    """SVG documents for every star class, keyed by file name."""
    out = {}
    system = atlas.system
    for cls in atlas.tile_classes:
        label = system.prototiles[cls.patch.tiles[0].proto].label
        out[f"tile_{cls.index:02d}.svg"] = _document(system, cls, f"tile {label}")
    for cls in atlas.edge_classes:
        caption = f"edge star {cls.index}"
        if rho is not None:
            value: Fraction = rho[cls.index]
            caption += f" | rho = {value} turn"
        out[f"edge_star_{cls.index:02d}.svg"] = _document(system, cls, caption)
    for cls in atlas.vertex_classes:
        caption = f"vertex star {cls.index} | symmetry {cls.symmetry_order}"
        if omega is not None:
            caption += f" | winding {omega[cls.index]:+d}"
        out[f"vertex_star_{cls.index:02d}.svg"] = _document(system, cls, caption)
    return out
