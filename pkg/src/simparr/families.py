"""Generators for the near-pencil and regular families plus checkers on the
geometry of the regular m-gon.

Tangent line T_j touches the unit circle at angle 2*pi*j/m; axis A_k passes
through the origin at angle pi*k/m.  Vertex Z_{j,l} = T_j meet T_l has
homogeneous coordinates

    [cos((j+l)pi/m) : sin((j+l)pi/m) : cos((l-j)pi/m)],

which is finite unless 2|l-j| = m.  Line indices inside a regular arrangement
are: tangents 0..m-1, axes m..2m-1, then the line at infinity.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Optional

from mpmath import iv

from .arrangement import Arrangement, IncidenceStructure, build_incidence
from .exceptions import UndecidedCoincidence
from .projective import ProjLine, ProjPoint, cross, det3
from .scalar import (IntervalReal, Sign, cos_pi, cyclotomic_degree, precision_ladder,
                     rational_enclosure, raw_sign, separation_bound, working_precision)

# -- exact-where-possible trigonometry --------------------------------------------

_RATIONAL_COS = {Fraction(0): 1, Fraction(1, 3): Fraction(1, 2), Fraction(1, 2): 0,
                 Fraction(2, 3): Fraction(-1, 2), Fraction(1): -1, Fraction(4, 3): Fraction(-1, 2),
                 Fraction(3, 2): 0, Fraction(5, 3): Fraction(1, 2)}


def cos_scalar(num: int, den: int):
    """cos(num*pi/den) as a Fraction when rational, else as an interval."""
    r = Fraction(num, den) % 2
    if r in _RATIONAL_COS:
        return Fraction(_RATIONAL_COS[r])
    return cos_pi(r.numerator, r.denominator)


def sin_scalar(num: int, den: int):
    r = Fraction(num, den) - Fraction(1, 2)
    return cos_scalar(r.numerator, r.denominator)


@lru_cache(maxsize=None)
def _cos_raw(num: int, den: int, bits: int):
    r = Fraction(num, den) % 2
    with working_precision(bits):
        if r in _RATIONAL_COS:
            return rational_enclosure(_RATIONAL_COS[r])
        return iv.cos(iv.pi * r.numerator / r.denominator)


def _sin_raw(num: int, den: int, bits: int):
    r = Fraction(num, den) - Fraction(1, 2)
    return _cos_raw(r.numerator, r.denominator, bits)


# -- generators ----------------------------------------------------------------------


def gen_near_pencil(k: int) -> Arrangement:
    """k lines through the origin plus x + y = 1 (the family R0 with k+1 lines)."""
    if k < 2:
        raise ValueError("a near-pencil needs k >= 2")
    lines = [ProjLine(1, 0, 0)] + [ProjLine(i, -1, 0) for i in range(k - 1)]
    lines.append(ProjLine(1, 1, -1))
    return Arrangement(tuple(lines), label=f"R0({k})")


@dataclass(frozen=True)
class RegularSpec:
    m: int
    with_line_at_infinity: bool = False

    def __post_init__(self):
        if self.m < 3:
            raise ValueError("a regular polygon needs m >= 3")
        if self.with_line_at_infinity and self.m % 2:
            raise ValueError("the line at infinity is only added for even m")

    @property
    def n(self) -> int:
        return 2 * self.m + (1 if self.with_line_at_infinity else 0)


def tangent_line(m: int, j: int) -> ProjLine:
    return ProjLine(cos_scalar(2 * j, m), sin_scalar(2 * j, m), -1)


def axis_line(m: int, k: int) -> ProjLine:
    return ProjLine(-sin_scalar(k, m), cos_scalar(k, m), 0)


LINE_AT_INFINITY = ProjLine(0, 0, 1)


def regular_coincidence(m: int, with_infinity: bool):
    """Symbolic key of the intersection point of two lines of A(2m,1).

    The rule: axes all meet at the origin; T_j, T_l and the axis A_{j+l mod m}
    meet at Z_{j,l}; T_j meets A_{2j} at its tangency point; when T_j and
    T_l are parallel the line at infinity joins Z_{j,l}; every other axis
    meets the line at infinity at a double point.
    """
    half = m // 2 if m % 2 == 0 else None

    def key(i: int, j: int):
        if i > j:
            i, j = j, i
        inf = 2 * m
        if j == inf:
            if i < m:
                if half is not None:
                    a, b = sorted((i, (i + half) % m))
                    return ("Z", a, b)
                return ("T-inf", i)
            k = i - m
            if half is not None and (k - half) % 2 == 0:
                t = ((k - half) // 2) % m
                a, b = sorted((t, (t + half) % m))
                return ("Z", a, b)
            return ("A-inf", k)
        if i >= m:
            return ("O",)
        if j < m:
            return ("Z", i, j)
        l = (j - m - i) % m
        if l == i:
            return ("M", i)
        a, b = sorted((i, l))
        return ("Z", a, b)

    return key


def gen_regular(spec: RegularSpec) -> Arrangement:
    """Sides and symmetry axes of the regular m-gon circumscribed about the unit circle."""
    m = spec.m
    lines = [tangent_line(m, j) for j in range(m)] + [axis_line(m, k) for k in range(m)]
    if spec.with_line_at_infinity:
        lines.append(LINE_AT_INFINITY)
    family = "R2" if spec.with_line_at_infinity else "R1"
    return Arrangement(tuple(lines), regular_coincidence(m, spec.with_line_at_infinity),
                       label=f"{family}({m})")


def gen_tangent(m: int) -> Arrangement:
    """The m sides of the regular m-gon alone; every vertex is a double point."""
    if m < 3:
        raise ValueError("need m >= 3")
    return Arrangement(tuple(tangent_line(m, j) for j in range(m)),
                       lambda i, j: (min(i, j), max(i, j)), label=f"tangent({m})")


def gen_family(family: str, size: int) -> Arrangement:
    family = family.upper()
    if family == "R0":
        return gen_near_pencil(size)
    if family == "R1":
        return gen_regular(RegularSpec(size))
    if family == "R2":
        if size % 2:
            raise ValueError("R2 needs an even m")
        return gen_regular(RegularSpec(size, True))
    if family == "TANGENT":
        return gen_tangent(size)
    raise ValueError(f"unknown family {family!r}")


def regular_snap(m: int):
    """Zero threshold for incidence determinants of A(2m,1), from the separation bound.

    Doubled line coordinates are algebraic integers of Q(zeta_M), M = lcm(2m, 4),
    with conjugates at most 2, so 8*det has conjugates at most 48.
    """
    degree = cyclotomic_degree(2 * m, 4)
    return separation_bound(48, degree) / 16


# -- vertex coordinates --------------------------------------------------------------


@dataclass(frozen=True)
class RegularVertexCoord:
    """Z_{j,l}: modulus 1/cos(d*pi/m) and argument arg_num*pi/m, with d the cyclic distance."""

    m: int
    j: int
    l: int
    distance: int
    arg_num: int

    @property
    def at_infinity(self) -> bool:
        return 2 * self.distance == self.m

    @property
    def modulus(self) -> Optional[IntervalReal]:
        if self.at_infinity:
            return None
        c = cos_scalar(self.distance, self.m)
        if isinstance(c, Fraction):
            c = IntervalReal.exact(c)
        return 1 / c

    @property
    def argument(self) -> Fraction:
        """Argument as a multiple of pi."""
        return Fraction(self.arg_num, self.m)

    def point(self) -> ProjPoint:
        m = self.m
        return ProjPoint(cos_scalar(self.arg_num, m), sin_scalar(self.arg_num, m),
                         cos_scalar(self.distance, m))


def regular_vertex(m: int, j: int, l: int) -> RegularVertexCoord:
    j, l = j % m, l % m
    if j == l:
        raise ValueError("Z_{j,l} needs j != l mod m")
    delta = (l - j) % m
    s = 2 * j + delta
    if 2 * delta > m:
        return RegularVertexCoord(m, j, l, m - delta, (s + m) % (2 * m))
    return RegularVertexCoord(m, j, l, delta, s % (2 * m))


def _vertex_raw(m: int, j: int, l: int, bits: int) -> tuple:
    """Enclosure of the homogeneous coordinates of Z_{j,l}."""
    s, d = j + l, l - j
    return (_cos_raw(s, m, bits), _sin_raw(s, m, bits), _cos_raw(d, m, bits))


# -- non-alignment -----------------------------------------------------------------


def _certified_sign(fn, snap=None) -> Sign:
    for bits in precision_ladder(53):
        with working_precision(bits):
            s = raw_sign(fn(bits), snap)
        if s.certain:
            return s
    return Sign.UNDECIDED


def cyclic_distance(m: int, j: int, l: int) -> int:
    d = (l - j) % m
    return min(d, m - d)


ALIGNMENT_PATTERNS = (((1, -2), (-1, 2)), ((2, -1), (-2, 1)))


def alignment_triples(m: int, j: int, l: int) -> list:
    """Index pairs of the two point triples that must not be collinear."""
    out = []
    for (a, b), (c, d) in ALIGNMENT_PATTERNS:
        out.append(((j, l), (j + a, l + b), (j + c, l + d)))
    return out


def alignment_snap(m: int):
    """Zero threshold for determinants of three vertices Z_{j,l}.

    Doubled coordinates are algebraic integers of Q(zeta_M), M = lcm(2m, 4), with
    conjugates at most 2; eight times the determinant has conjugates at most 48.
    """
    return separation_bound(48, cyclotomic_degree(2 * m, 4)) / 16


def alignment_signs(m: int, j: int, l: int) -> tuple:
    """Collinearity determinant signs for both triples around Z_{j,l}."""
    if m < 8:
        raise ValueError("the alignment statement needs m >= 8")
    if cyclic_distance(m, j, l) < 4:
        raise ValueError("the alignment statement needs cyclic distance |l - j| >= 4")
    out = []
    for triple in alignment_triples(m, j, l):
        def det(bits, triple=triple):
            pts = [_vertex_raw(m, a, b, bits) for a, b in triple]
            return det3(*pts)
        out.append(_certified_sign(det, alignment_snap(m)))
    return tuple(out)


def check_alignment(m: int, j: int, l: int) -> Sign:
    """Combined verdict: ZERO or UNDECIDED if either triple fails, else the first sign."""
    signs = alignment_signs(m, j, l)
    for s in signs:
        if not s.nonzero:
            return s
    return signs[0]


def alignment_cases(m: int):
    for j in range(m):
        for l in range(m):
            if j != l and cyclic_distance(m, j, l) >= 4:
                yield j, l


# -- forbidden five-point configuration ------------------------------------------------


class _RegularGeometry:
    """Doubled line coordinates and vertex vectors of A(2m,1) at each precision."""

    def __init__(self, m: int):
        self.m = m
        self.arrangement = gen_regular(RegularSpec(m))
        self.structure = build_incidence(self.arrangement)
        self.snap = separation_bound(3072, cyclotomic_degree(2 * m, 4)) / 2
        self._cache = {}

    def lines(self, bits):
        if bits not in self._cache:
            with working_precision(bits):
                L = [tuple(2 * c.at(bits) if isinstance(c, IntervalReal) else rational_enclosure(2 * c)
                           for c in line.coords) for line in self.arrangement.lines]
                P = [cross(L[min(v.lines)], L[sorted(v.lines)[1]]) for v in self.structure.vertices]
            self._cache[bits] = (L, P)
        return self._cache[bits]


@lru_cache(maxsize=16)
def _regular_geometry(m: int) -> _RegularGeometry:
    return _RegularGeometry(m)


def _line_profile(geo: _RegularGeometry, a: int, b: int) -> list:
    """Intersection points of the join of vertices a, b with A(2m,1), in cyclic order.

    Each entry is ("vertex", id, order) or ("edge", line).
    """
    S = geo.structure
    on = []
    covered = set()
    for v in range(S.V):
        if v in (a, b):
            s = Sign.ZERO
        else:
            s = _certified_sign(lambda bits, v=v: det3(geo.lines(bits)[1][a], geo.lines(bits)[1][b],
                                                      geo.lines(bits)[1][v]), geo.snap)
        if s is Sign.UNDECIDED:
            raise UndecidedCoincidence(f"cannot decide whether vertex {v} lies on the scan line")
        if s is Sign.ZERO:
            on.append(("vertex", v, S.order(v)))
            covered |= S.vertices[v].lines
    for i in range(S.n):
        if i not in covered:
            on.append(("edge", i))

    def vec(item, bits):
        L, P = geo.lines(bits)
        if item[0] == "vertex":
            return P[item[1]]
        return cross(cross(P[a], P[b]), L[item[1]])

    def sgn(fn):
        s = _certified_sign(fn)
        if not s.nonzero:
            raise UndecidedCoincidence("cannot order the points along the scan line")
        return s.value

    def lam(bits):
        P = geo.lines(bits)[1]
        return cross(P[a], P[b])

    ref = on[0]
    flip = {0: 1}
    for idx in range(1, len(on)):
        flip[idx] = sgn(lambda bits, idx=idx: det3(lam(bits), vec(ref, bits), vec(on[idx], bits)))

    def cmp(x, y):
        if x == y:
            return 0
        return -sgn(lambda bits: det3(lam(bits), vec(on[x], bits), vec(on[y], bits))) * flip[x] * flip[y]

    order = sorted(range(len(on)), key=cmp_to_key(cmp))
    return [on[i] for i in order]


def _label(item) -> str:
    return f"v{item[1]}(k={item[2]})" if item[0] == "vertex" else f"edge(line {item[1]})"


def forbidden_configuration_scan(m: int) -> list:
    """Lines through two triple points of A(2m,1) carrying the pattern
    triple, edge point, triple, edge point, triple on consecutive intersections.

    Only joins of two triple points are scanned; a line carrying the pattern
    already passes through its outer triple points, so nothing is missed.
    Excluded: joins of vertices sharing an arrangement line (this also covers
    lines through the center) and the line at infinity.
    """
    if m < 3:
        raise ValueError("need m >= 3")
    geo = _regular_geometry(m)
    S = geo.structure
    triples = [v for v in range(S.V) if S.order(v) == 3]
    infinite = {v for v in triples if _regular_at_infinity(m, S.vertices[v].lines)}
    seen, violations = set(), []
    for x in range(len(triples)):
        for y in range(x + 1, len(triples)):
            a, b = triples[x], triples[y]
            if S.vertices[a].lines & S.vertices[b].lines:
                continue
            if a in infinite and b in infinite:
                continue
            if frozenset((a, b)) in seen:
                continue
            profile = _line_profile(geo, a, b)
            vertices_on = [it[1] for it in profile if it[0] == "vertex"]
            for p in vertices_on:
                for q in vertices_on:
                    seen.add(frozenset((p, q)))
            k = len(profile)
            if k < 5:
                continue
            for start in range(k):
                window = [profile[(start + t) % k] for t in range(5)]
                if all(window[t][0] == "vertex" and window[t][2] == 3 for t in (0, 2, 4)) and \
                        all(window[t][0] == "edge" for t in (1, 3)):
                    violations.append({
                        "m": m, "through": [a, b],
                        "points": [_label(w) for w in window],
                        "involves_infinity": any(w[0] == "vertex" and w[1] in infinite
                                                 for w in window)})
    return violations


def _regular_at_infinity(m: int, lines) -> bool:
    """Whether a vertex of A(2m,1) given by its line set lies on the line at infinity."""
    tangents = sorted(i for i in lines if i < m)
    if 2 * m in lines:
        return True
    return len(tangents) == 2 and 2 * cyclic_distance(m, *tangents) == m


def triple_points_on_axis(m: int, k: int = 0) -> int:
    """Number of triple points of A(2m,1) on the axis A_k (a line the scan excludes)."""
    S = _regular_geometry(m).structure
    return sum(1 for v in S.vertices if v.order == 3 and (m + k % m) in v.lines)


# -- quadrilaterals crossed by an axis ---------------------------------------------------

LAMBDA_KINDS = ("through_corners", "through_triangle_interiors", "odd_m")


def crossed_quadrilaterals(m: int, lambda_kind: str) -> list:
    """Quadrilateral faces of the tangent arrangement with opposite corners on the axis."""
    if lambda_kind not in LAMBDA_KINDS:
        raise ValueError(f"unknown kind {lambda_kind!r}")
    if (lambda_kind == "odd_m") != (m % 2 == 1):
        raise ValueError(f"{lambda_kind} does not apply to m = {m}")
    if m < 3:
        raise ValueError("need m >= 3")
    k = 0 if lambda_kind == "through_triangle_interiors" else 1
    S = build_incidence(gen_tangent(m))

    def on_axis(v):
        j, l = sorted(S.vertices[v].lines)
        return (j + l) % m == k

    out = []
    for f, face in enumerate(S.faces):
        if face.size != 4:
            continue
        vs = face.vertices
        if (on_axis(vs[0]) and on_axis(vs[2])) or (on_axis(vs[1]) and on_axis(vs[3])):
            out.append(f)
    return out


def count_crossed_quadrilaterals(m: int, lambda_kind: str) -> int:
    return len(crossed_quadrilaterals(m, lambda_kind))


def expected_crossed_quadrilaterals(m: int, lambda_kind: str) -> int:
    return {"through_corners": (m - 2) // 2, "through_triangle_interiors": (m - 4) // 2,
            "odd_m": (m - 3) // 2}[lambda_kind]


# -- tangent polygon combinatorics -------------------------------------------------------


def tangent_polygon_report(S: IncidenceStructure, m: int) -> dict:
    """Face-type breakdown of the tangent arrangement: central polygon, triangles, quadrilaterals."""
    central = [f for f, face in enumerate(S.faces)
               if face.size == m and all(_adjacent_sides(S, v, m) for v in face.vertices)]
    others = [face.size for f, face in enumerate(S.faces) if f not in central[:1]]
    return {
        "m": m,
        "central": len(central[:1]),
        "triangles": sum(1 for s in others if s == 3),
        "quadrilaterals": sum(1 for s in others if s == 4),
        "other": sum(1 for s in others if s not in (3, 4)),
        "all_double": all(v.order == 2 for v in S.vertices),
    }


def _adjacent_sides(S, v, m) -> bool:
    j, l = sorted(S.vertices[v].lines)
    return (l - j) % m in (1, m - 1)


# -- CPInter instances ---------------------------------------------------------------------
#
# Everything here runs on integers: points are primitive triples (X, Y, W) with
# W > 0 standing for (X/W, Y/W), lines are primitive triples (a, b, c).


def _prim(v) -> tuple:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _hpoint(p) -> tuple:
    x, y = Fraction(p[0]), Fraction(p[1])
    return _prim((x.numerator * y.denominator, y.numerator * x.denominator,
                  x.denominator * y.denominator))


def _hline(L) -> tuple:
    coords = L.coords if isinstance(L, ProjLine) else L
    coords = [Fraction(c) for c in coords]
    den = 1
    for c in coords:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _prim(tuple(int(c * den) for c in coords))


def _val(L, p) -> int:
    return L[0] * p[0] + L[1] * p[1] + L[2] * p[2]


def _as_pair(p) -> tuple:
    return (Fraction(p[0], p[2]), Fraction(p[1], p[2]))


@dataclass(frozen=True)
class CPInterInstance:
    """A convex polygon (counter-clockwise vertices) and two families of affine lines.

    Lines are triples (a, b, c) for a*x + b*y + c = 0 and are stored as
    primitive integer triples.
    """

    polygon: tuple
    F: tuple
    G: tuple

    def __post_init__(self):
        object.__setattr__(self, "polygon", tuple((Fraction(x), Fraction(y)) for x, y in self.polygon))
        object.__setattr__(self, "F", tuple(_hline(L) for L in self.F))
        object.__setattr__(self, "G", tuple(_hline(L) for L in self.G))


def _side_lines(poly) -> list:
    """Side lines of a counter-clockwise polygon of homogeneous points, interior positive."""
    k = len(poly)
    return [_prim(cross(poly[i], poly[(i + 1) % k])) for i in range(k)]


def is_convex_ccw(polygon) -> bool:
    k = len(polygon)
    if k < 3:
        return False
    for i in range(k):
        a, b, c = polygon[i], polygon[(i + 1) % k], polygon[(i + 2) % k]
        if (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) <= 0:
            return False
    return True


def _meets_interior(L, poly) -> bool:
    pos = neg = False
    for p in poly:
        v = _val(L, p)
        pos |= v > 0
        neg |= v < 0
    return pos and neg


def _inside_closed(p, sides) -> bool:
    """p is a homogeneous point with p[2] != 0."""
    s = 1 if p[2] > 0 else -1
    return all(s * _val(L, p) >= 0 for L in sides)


def _meet_inside_closed(L, M, sides) -> bool:
    p = cross(L, M)
    return p[2] != 0 and _inside_closed(p, sides)


def _proportional(L, M) -> bool:
    return L[1] * M[2] == L[2] * M[1] and L[2] * M[0] == L[0] * M[2] and L[0] * M[1] == L[1] * M[0]


def instance_problems(inst: CPInterInstance) -> list:
    """Violated preconditions of an instance (empty when valid)."""
    if not is_convex_ccw(inst.polygon):
        return ["polygon is not strictly convex and counter-clockwise"]
    poly = [_hpoint(p) for p in inst.polygon]
    sides = _side_lines(poly)
    lines = list(inst.F) + list(inst.G)
    problems = []
    for i, L in enumerate(lines):
        if L[0] == 0 and L[1] == 0:
            problems.append(f"line {i} is degenerate")
        elif not _meets_interior(L, poly):
            problems.append(f"line {i} misses the polygon interior")
        for j in range(i):
            if _proportional(L, lines[j]):
                problems.append(f"lines {j} and {i} coincide")
    for i in range(len(inst.F)):
        for j in range(i + 1, len(inst.F)):
            if _meet_inside_closed(inst.F[i], inst.F[j], sides):
                problems.append(f"F lines {i} and {j} meet inside the closed polygon")
    return problems


def _split(cells, L) -> list:
    out = []
    for cell in cells:
        vals = [_val(L, p) for p in cell]
        if not (any(v > 0 for v in vals) and any(v < 0 for v in vals)):
            out.append(cell)
            continue
        pos, neg = [], []
        k = len(cell)
        for i in range(k):
            p, vp = cell[i], vals[i]
            q, vq = cell[(i + 1) % k], vals[(i + 1) % k]
            if vp >= 0:
                pos.append(p)
            if vp <= 0:
                neg.append(p)
            if (vp > 0 > vq) or (vp < 0 < vq):
                x = tuple(vp * q[c] - vq * p[c] for c in range(3))
                if x[2] < 0:
                    x = tuple(-c for c in x)
                x = _prim(x)
                pos.append(x)
                neg.append(x)
        out.append(pos)
        out.append(neg)
    return out


def polygon_cells(polygon, lines) -> list:
    """Cells cut out of a convex polygon by lines, each a list of (x, y) Fractions."""
    cells = [[_hpoint(p) for p in polygon]]
    for L in lines:
        cells = _split(cells, _hline(L))
    return [[_as_pair(p) for p in cell] for cell in cells]


def cpinter_check(inst: CPInterInstance) -> tuple:
    """(triangulates, holds) where holds means not triangulating or |G| >= |F| - 1."""
    problems = instance_problems(inst)
    if problems:
        raise ValueError("invalid instance: " + "; ".join(problems))
    cells = [[_hpoint(p) for p in inst.polygon]]
    for L in inst.F + inst.G:
        cells = _split(cells, L)
    triangulates = all(len(c) == 3 for c in cells)
    holds = (not triangulates) or len(inst.G) >= len(inst.F) - 1
    return triangulates, holds


def cpinter_structure_check(inst: CPInterInstance) -> bool:
    """Triangulation verdict read off the full projective incidence structure.

    Slower than :func:`cpinter_check`; used to cross-validate it.
    """
    poly = [_hpoint(p) for p in inst.polygon]
    sides = _side_lines(poly)
    lines = [ProjLine(s) for s in sides] + [ProjLine(L) for L in inst.F + inst.G]
    S = build_incidence(Arrangement(tuple(lines)))
    for face in S.faces:
        p = face.interior
        if p[2] == 0:
            continue
        sgn = 1 if p[2] > 0 else -1
        if all(sgn * (s[0] * p[0] + s[1] * p[1] + s[2] * p[2]) > 0 for s in sides):
            if face.size != 3:
                return False
    return True


def random_convex_polygon(rng: random.Random, box: int = 8) -> tuple:
    while True:
        k = rng.randint(3, 6)
        pts = {(rng.randint(-box, box), rng.randint(-box, box)) for _ in range(k + 3)}
        hull = _convex_hull(sorted(pts))
        if len(hull) >= 3:
            return tuple((Fraction(x), Fraction(y)) for x, y in hull)


def _convex_hull(points) -> list:
    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in points:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(points):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def random_cpinter_instance(rng: random.Random, max_f: int = 4, max_g: int = 6) -> CPInterInstance:
    """A random valid instance.

    F lines join random boundary points.  G lines are mostly diagonals of cells
    that are not yet triangles, which makes triangulating instances common.
    """
    polygon = random_convex_polygon(rng)
    poly = [_hpoint(p) for p in polygon]
    sides = _side_lines(poly)
    k = len(poly)
    boundary = list(poly)
    for i in range(k):
        p, q = poly[i], poly[(i + 1) % k]
        t = rng.randint(1, 3)
        boundary.append(_prim(tuple((4 - t) * p[c] * q[2] + t * q[c] * p[2] for c in range(2))
                              + (4 * p[2] * q[2],)))
    chosen = []

    def usable(L):
        return (L[0] or L[1]) and _meets_interior(L, poly) and \
            not any(_proportional(L, M) for M in chosen) and \
            not any(_proportional(L, s) for s in sides)

    F = []
    for _ in range(rng.randint(0, max_f)):
        for _ in range(20):
            p, q = rng.sample(boundary, 2)
            L = _prim(cross(p, q))
            if usable(L) and not any(_meet_inside_closed(L, M, sides) for M in F):
                F.append(L)
                chosen.append(L)
                break
    cells = [list(poly)]
    for L in F:
        cells = _split(cells, L)
    G = []
    for _ in range(rng.randint(0, max_g)):
        open_cells = [c for c in cells if len(c) > 3]
        L = None
        for _ in range(20):
            if open_cells and rng.random() < 0.85:
                cell = rng.choice(open_cells)
                i = rng.randrange(len(cell))
                j = (i + rng.randint(2, len(cell) - 2)) % len(cell)
                cand = _prim(cross(cell[i], cell[j]))
            else:
                p, q = rng.sample(boundary, 2)
                cand = _prim(cross(p, q))
            if usable(cand):
                L = cand
                break
        if L is None:
            break
        G.append(L)
        chosen.append(L)
        cells = _split(cells, L)
    return CPInterInstance(polygon, tuple(F), tuple(G))


def cpinter_suite(count: int, seed: int = 0) -> dict:
    rng = random.Random(seed)
    triangulating, violations = 0, []
    for idx in range(count):
        inst = random_cpinter_instance(rng)
        tri, holds = cpinter_check(inst)
        triangulating += tri
        if not holds:
            violations.append({"index": idx, "F": len(inst.F), "G": len(inst.G)})
    return {"instances": count, "triangulating": triangulating, "violations": violations}
