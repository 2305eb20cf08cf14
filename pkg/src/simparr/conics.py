"""Conics through five points, and the two collinearity conditions satisfied by
a regular polygon and its center."""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Sequence

from .exceptions import RankDeficient, UndecidedError
from .projective import ProjPoint, cross, det3
from .scalar import Sign, cyclotomic_degree, separation_bound, sign_of


class ConicClass(enum.Enum):
    ELLIPSE = "Ellipse"
    PARABOLA = "Parabola"
    HYPERBOLA = "Hyperbola"
    DEGENERATE = "Degenerate"


def _certain(value) -> Sign:
    s = sign_of(value)
    if s is Sign.UNDECIDED:
        raise UndecidedError("cannot decide a pivot during elimination")
    return s


def _null_vector(rows: list, width: int) -> tuple:
    """The kernel vector of a rank width-1 matrix, by exact Gauss-Jordan elimination."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(rows)) if _certain(rows[i][col]).nonzero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and _certain(rows[i][col]).nonzero:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    if len(pivots) != width - 1:
        raise RankDeficient(f"the points impose {len(pivots)} conditions, not {width - 1}")
    free = next(c for c in range(width) if c not in pivots)
    out = [Fraction(0)] * width
    out[free] = Fraction(1)
    for i, col in enumerate(pivots):
        out[col] = -rows[i][free]
    return tuple(out)


def conic_through_five(points: Sequence[ProjPoint]) -> tuple:
    """Coefficients (a, b, c, d, e, f) of a x^2 + b xy + c y^2 + d xz + e yz + f z^2
    through five points, and the type of the conic in the chart z = 1."""
    if len(points) != 5:
        raise ValueError("need exactly five points")
    rows = []
    for P in points:
        x, y, z = P.coords
        rows.append([x * x, x * y, y * y, x * z, y * z, z * z])
    coeffs = _null_vector(rows, 6)
    a, b, c, d, e, f = coeffs
    det = det3((2 * a, b, d), (b, 2 * c, e), (d, e, 2 * f))
    if _certain(det) is Sign.ZERO:
        return coeffs, ConicClass.DEGENERATE
    disc = _certain(b * b - 4 * a * c)
    if disc is Sign.NEGATIVE:
        return coeffs, ConicClass.ELLIPSE
    if disc is Sign.ZERO:
        return coeffs, ConicClass.PARABOLA
    return coeffs, ConicClass.HYPERBOLA


# -- alignment conditions of a polygon with a center ----------------------------------------


def _join(p, q):
    return cross(p, q)


def _meet(p1, p2, q1, q2):
    return cross(cross(p1, p2), cross(q1, q2))


def alignment_determinants(vertices: Sequence, center) -> list:
    """For each i the determinants of
    (C, x_i, x_{i-2}x_{i-1} meet x_{i+1}x_{i+2}) and
    (C, x_{i-2}x_{i-1} meet x_i x_{i+1}, x_{i-3}x_{i-2} meet x_{i+1}x_{i+2})."""
    n = len(vertices)
    x = [tuple(v) for v in vertices]
    C = tuple(center)
    out = []
    for i in range(n):
        def at(k):
            return x[(i + k) % n]
        first = det3(C, at(0), _meet(at(-2), at(-1), at(1), at(2)))
        second = det3(C, _meet(at(-2), at(-1), at(0), at(1)), _meet(at(-3), at(-2), at(1), at(2)))
        out.append((first, second))
    return out


def verify_alignment_conditions(vertices: Sequence, center, *, height, degree: int) -> bool:
    """True iff every alignment determinant is certified zero.

    Coordinates must be algebraic integers of a field of the given degree whose
    conjugates are bounded by ``height``; each determinant then is an algebraic
    integer with conjugates below 384 * height**9, which yields a separation
    bound below which an enclosure counts as zero.
    """
    if len(vertices) < 5:
        raise ValueError("need at least five vertices")
    snap = separation_bound(384 * height ** 9, degree) / 2
    for pair in alignment_determinants(vertices, center):
        for value in pair:
            s = sign_of(value, snap=snap)
            if s is Sign.UNDECIDED:
                raise UndecidedError("alignment determinant undecided at the precision cap")
            if s.nonzero:
                return False
    return True


def _regular_vertices(m: int, scale: int) -> list:
    from .families import cos_scalar, sin_scalar

    return [(scale * cos_scalar(2 * i, m), scale * sin_scalar(2 * i, m), scale) for i in range(m)]


def verify_regular_alignment_conditions(m: int) -> bool:
    """Both alignment conditions for the regular m-gon centered at the origin."""
    if m < 5:
        raise ValueError("need m >= 5")
    # doubled coordinates are algebraic integers of Q(zeta_lcm(m,4)) bounded by 2
    return verify_alignment_conditions(_regular_vertices(m, 2), (0, 0, 2), height=2,
                                       degree=cyclotomic_degree(m, 4))


def perturbed_hexagon(offset=Fraction(1, 10)) -> list:
    """The regular hexagon with vertex 0 pushed outward by ``offset``, scaled by 20."""
    verts = _regular_vertices(6, 20)
    x, y, z = verts[0]
    verts[0] = (x + 20 * offset, y, z)
    return verts


def verify_perturbed_hexagon(offset=Fraction(1, 10)) -> bool:
    """Alignment conditions for the perturbed hexagon (expected to fail)."""
    offset = Fraction(offset)
    height = 20 + 20 * abs(offset)
    if height.denominator != 1:
        raise ValueError("offset must be a multiple of 1/20")
    return verify_alignment_conditions(perturbed_hexagon(offset), (0, 0, 20),
                                       height=int(height), degree=cyclotomic_degree(6, 4))
