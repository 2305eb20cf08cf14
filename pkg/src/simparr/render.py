"""Affine pictures of an arrangement: clipped segments and vertex dots.

Drawing uses floating point only; nothing here feeds back into certified
results.  The chart is z = 1 unless a line index is given, in which case a
projective change of coordinates sends that line to infinity first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .arrangement import Arrangement, IncidenceStructure, build_incidence
from .projective import cross

VIEW = 4.0


@dataclass(frozen=True)
class Picture:
    segments: tuple  # (line index, (x0, y0), (x1, y1))
    dots: tuple  # (vertex index, order, (x, y))


def _dot(u, v) -> float:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def chart_frame(A: Arrangement, chart: Optional[int]) -> tuple:
    """Rows of a matrix whose last row is the line sent to infinity."""
    if chart is None:
        return ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    if not 0 <= chart < A.n:
        raise ValueError(f"chart line {chart} out of range 0..{A.n - 1}")
    L = A.lines[chart].to_float()
    basis = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    best = None
    for i in range(3):
        for j in range(i + 1, 3):
            d = abs(_dot(basis[i], cross(basis[j], L)))
            if best is None or d > best[0]:
                best = (d, basis[i], basis[j])
    return (best[1], best[2], L)


def _image_line(frame, L) -> tuple:
    r1, r2, r3 = frame
    return (_dot(L, cross(r2, r3)), _dot(L, cross(r3, r1)), _dot(L, cross(r1, r2)))


def _image_point(frame, P) -> tuple:
    return tuple(_dot(r, P) for r in frame)


def clip_line(a: float, b: float, c: float, half: float = VIEW):
    """The part of a x + b y + c = 0 inside the square [-half, half]^2, or None."""
    norm = math.hypot(a, b)
    if norm <= 1e-12 * max(1.0, abs(c)):
        return None
    p = (-a * c / norm ** 2, -b * c / norm ** 2)
    d = (-b / norm, a / norm)
    t0, t1 = -math.inf, math.inf
    for k in (0, 1):
        if abs(d[k]) < 1e-15:
            if abs(p[k]) > half:
                return None
            continue
        lo, hi = sorted(((-half - p[k]) / d[k], (half - p[k]) / d[k]))
        t0, t1 = max(t0, lo), min(t1, hi)
    if t1 - t0 <= 1e-12:
        return None
    return ((p[0] + t0 * d[0], p[1] + t0 * d[1]), (p[0] + t1 * d[0], p[1] + t1 * d[1]))


def _vertex_data(A: Arrangement, S: Optional[IncidenceStructure]) -> list:
    if S is not None:
        return [(v.point.to_float(), v.order) for v in S.vertices]
    out = []
    floats = [L.to_float() for L in A.lines]
    for i in range(len(floats)):
        for j in range(i + 1, len(floats)):
            out.append((cross(floats[i], floats[j]), 2))
    return out


def picture(A: Arrangement, chart: Optional[int] = None,
            S: Optional[IncidenceStructure] = None) -> Picture:
    if A.n == 0:
        raise ValueError("nothing to draw: the arrangement is empty")
    if S is None and A.n >= 3:
        S = build_incidence(A)
    frame = chart_frame(A, chart)
    segments = []
    for i, L in enumerate(A.lines):
        if i == chart:
            continue
        seg = clip_line(*_image_line(frame, L.to_float()))
        if seg is not None:
            segments.append((i, seg[0], seg[1]))
    dots = []
    for v, (P, order) in enumerate(_vertex_data(A, S)):
        x, y, z = _image_point(frame, P)
        scale = max(abs(x), abs(y), abs(z))
        if scale == 0 or abs(z) <= 1e-12 * scale:
            continue
        x, y = x / z, y / z
        if abs(x) <= VIEW and abs(y) <= VIEW:
            dots.append((v, order, (x, y)))
    return Picture(tuple(segments), tuple(dots))


def _num(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def dot_radius(order: int) -> float:
    return 0.04 + 0.02 * (order - 2)


def svg(pic: Picture) -> str:
    """Deterministic SVG 1.1 text; y grows upward as in the affine chart."""
    out = ['<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
           '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'viewBox="{-VIEW:g} {-VIEW:g} {2 * VIEW:g} {2 * VIEW:g}" width="480" height="480">',
           f'<rect x="{-VIEW:g}" y="{-VIEW:g}" width="{2 * VIEW:g}" height="{2 * VIEW:g}" fill="white"/>',
           '<g stroke="black" stroke-width="0.02" stroke-linecap="round">']
    for i, (x0, y0), (x1, y1) in pic.segments:
        out.append(f'<line id="L{i}" x1="{_num(x0)}" y1="{_num(-y0)}" x2="{_num(x1)}" y2="{_num(-y1)}"/>')
    out.append("</g>")
    out.append('<g fill="crimson" stroke="none">')
    for v, order, (x, y) in pic.dots:
        out.append(f'<circle id="V{v}" cx="{_num(x)}" cy="{_num(-y)}" r="{_num(dot_radius(order))}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(A: Arrangement, chart: Optional[int] = None,
               S: Optional[IncidenceStructure] = None) -> str:
    return svg(picture(A, chart, S))
