"""Incidence structures of line arrangements in the real projective plane.

Faces are traced on the sphere: every projective line lifts to a great
circle, every vertex to a pair of antipodal points, and the orientable
surface gives a rotation system from which faces fall out as half-edge
orbits.  Antipodal faces are then identified, which turns V-E+F = 2 upstairs
into V-E+F = 1 on the projective plane.

All predicates are signs of 3x3 determinants.  The exact backend works on
primitive integer triples; the interval backend works on raw ``mpmath.iv``
enclosures and restarts one rung higher on the precision ladder whenever a
sign cannot be certified.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Callable, Hashable, Optional, Sequence

from .exceptions import (DuplicateLine, IsNearPencil, NotSimplicial, OracleMismatch,
                         SimparrError, UndecidedCoincidence)
from .projective import ProjLine, ProjPoint, ProjTransform, cross, det3, dot, transform_line
from .scalar import (IntervalReal, as_interval, precision_ladder, raw_sign, working_precision)

CoincidenceRule = Callable[[int, int], Hashable]


@dataclass(frozen=True)
class Arrangement:
    """An ordered list of pairwise distinct projective lines.

    ``coincidence`` optionally maps a pair of line indices to a symbolic key
    for their intersection point; pairs with equal keys meet in the same
    vertex.  It is checked against certified numerics during construction,
    never trusted blindly.  ``snap`` is an absolute tolerance below which an
    interval incidence counts as exact; it is meant for coordinates read back
    from a file at a declared precision.
    """

    lines: tuple
    coincidence: Optional[CoincidenceRule] = field(default=None, compare=False)
    snap: object = None
    label: str = ""

    def __post_init__(self):
        lines = tuple(L if isinstance(L, ProjLine) else ProjLine(L) for L in self.lines)
        object.__setattr__(self, "lines", lines)

    @property
    def n(self) -> int:
        return len(self.lines)

    @property
    def backend(self) -> str:
        return "rational" if all(L.is_exact for L in self.lines) else "interval"

    def transformed(self, T: ProjTransform) -> "Arrangement":
        """Image under a projective transformation; the coincidence rule carries over."""
        return Arrangement(tuple(transform_line(T, L) for L in self.lines),
                           self.coincidence, self.snap, self.label)

    def extended(self, extra: Sequence) -> "Arrangement":
        """A new arrangement with extra lines appended (drops the coincidence rule)."""
        return Arrangement(self.lines + tuple(extra), None, self.snap, self.label)


@dataclass(frozen=True)
class Vertex:
    point: ProjPoint
    lines: frozenset

    @property
    def order(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class Edge:
    line: int
    ends: tuple
    position: int


@dataclass(frozen=True)
class Face:
    """A face as a closed walk: ``edges[i]`` runs from ``vertices[i]`` to ``vertices[i+1]``."""

    edges: tuple
    vertices: tuple
    interior: tuple

    @property
    def size(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class IncidenceStructure:
    arrangement: Arrangement
    vertices: tuple
    edges: tuple
    faces: tuple
    line_vertices: tuple
    precision_bits: Optional[int] = None

    @property
    def n(self) -> int:
        return self.arrangement.n

    @property
    def V(self) -> int:
        return len(self.vertices)

    @property
    def E(self) -> int:
        return len(self.edges)

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def v_histogram(self) -> dict:
        counts = Counter(v.order for v in self.vertices)
        return {k: counts[k] for k in sorted(counts)}

    @property
    def face_histogram(self) -> dict:
        counts = Counter(f.size for f in self.faces)
        return {k: counts[k] for k in sorted(counts)}

    def order(self, v: int) -> int:
        return self.vertices[v].order

    def faces_at(self, v: int) -> list:
        return [i for i, f in enumerate(self.faces) if v in f.vertices]

    def invariant_vector(self) -> tuple:
        return (self.n, self.V, self.E, self.F,
                tuple(sorted(self.v_histogram.items())),
                tuple(sorted(len(vs) for vs in self.line_vertices)),
                tuple(sorted(self.face_histogram.items())))


# -- numeric kernels -------------------------------------------------------------


class _Undecided(Exception):
    pass


def _primitive(values) -> tuple:
    """Scale a rational triple to coprime integers."""
    den = 1
    for q in values:
        den = den * q.denominator // math.gcd(den, q.denominator)
    ints = [int(q * den) for q in values]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _canonical(vec) -> tuple:
    g = 0
    for x in vec:
        g = math.gcd(g, x)
    vec = tuple(x // g for x in vec)
    for x in vec:
        if x:
            return vec if x > 0 else tuple(-y for y in vec)
    return vec


class _ExactKernel:
    exact = True
    bits = None

    def __init__(self, A: Arrangement):
        self.lines = [_primitive(L.coords) for L in A.lines]

    def sign(self, x) -> int:
        return (x > 0) - (x < 0)

    def scalar(self, x):
        return Fraction(x)


class _IntervalKernel:
    exact = False

    def __init__(self, A: Arrangement, bits: int):
        self.bits = bits
        self.snap = A.snap
        self.lines = [tuple(as_interval(c).at(bits) for c in L.coords) for L in A.lines]

    def sign(self, x) -> int:
        s = raw_sign(x, self.snap)
        if not s.certain:
            raise _Undecided
        return s.value

    def scalar(self, x):
        return IntervalReal.fixed(x.a, x.b, self.bits)


# -- construction ------------------------------------------------------------------


def build_incidence(A: Arrangement) -> IncidenceStructure:
    """Vertices, edges and faces of an arrangement of at least three lines."""
    if A.n < 3:
        raise ValueError("face enumeration needs at least three lines")
    if A.backend == "rational":
        return _build(A, _ExactKernel(A))
    for bits in precision_ladder(53):
        try:
            with working_precision(bits):
                kernel = _IntervalKernel(A, bits)
                return _build(A, kernel)
        except _Undecided:
            continue
    raise UndecidedCoincidence(
        f"could not separate the vertices of {A.label or 'the arrangement'} at the precision cap")


def _check_distinct(A, K):
    L = K.lines
    if K.exact:
        seen = {}
        for i, line in enumerate(L):
            key = _canonical(line)
            if key in seen:
                raise DuplicateLine(f"lines {seen[key]} and {i} coincide")
            seen[key] = i
        return
    for i in range(len(L)):
        for j in range(i + 1, len(L)):
            c = cross(L[i], L[j])
            signs = [raw_sign(x, K.snap) for x in c]
            if any(s.nonzero for s in signs):
                continue
            if all(s.certain for s in signs):
                raise DuplicateLine(f"lines {i} and {j} coincide")
            raise _Undecided


def _vertex_groups(A, K) -> list:
    """Line sets of the vertices, sorted."""
    L, n = K.lines, len(K.lines)
    if K.exact:
        groups = defaultdict(set)
        for i in range(n):
            for j in range(i + 1, n):
                groups[_canonical(cross(L[i], L[j]))].update((i, j))
        return sorted(tuple(sorted(g)) for g in groups.values())

    if A.coincidence is not None:
        keyed = defaultdict(set)
        pair_key = {}
        for i in range(n):
            for j in range(i + 1, n):
                key = A.coincidence(i, j)
                pair_key[i, j] = key
                keyed[key].update((i, j))
        groups = []
        for key, members in keyed.items():
            members = tuple(sorted(members))
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    if pair_key[members[a], members[b]] != key:
                        raise OracleMismatch(f"lines {members} do not pairwise meet at {key!r}")
            p = cross(L[members[0]], L[members[1]])
            inside = set(members)
            for k in range(n):
                s = raw_sign(dot(L[k], p), K.snap)
                if k in inside:
                    if s.nonzero:
                        raise OracleMismatch(f"line {k} misses the vertex {key!r}")
                elif not s.nonzero:
                    raise _Undecided
            groups.append(members)
        return sorted(groups)

    seen = set()
    groups = []
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in seen:
                continue
            p = cross(L[i], L[j])
            members = [i, j]
            for k in range(n):
                if k != i and k != j and K.sign(dot(L[k], p)) == 0:
                    members.append(k)
            members.sort()
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    seen.add((members[a], members[b]))
            groups.append(tuple(members))
    return sorted(groups)


def _build(A: Arrangement, K) -> IncidenceStructure:
    _check_distinct(A, K)
    L = K.lines
    n = len(L)
    groups = _vertex_groups(A, K)
    reps = [cross(L[g[0]], L[g[1]]) for g in groups]

    on_line = [[] for _ in range(n)]
    for v, g in enumerate(groups):
        for i in g:
            on_line[i].append(v)

    # cyclic order along each line, with the sign that puts each vertex
    # representative in the half-circle starting at the first vertex
    line_order, flip = [], {}
    for i in range(n):
        verts = on_line[i]
        ref = reps[verts[0]]
        flip[i, verts[0]] = 1
        for v in verts[1:]:
            s = K.sign(det3(L[i], ref, reps[v]))
            if s == 0:
                raise UndecidedCoincidence(f"two vertices of line {i} coincide")
            flip[i, v] = s

        def cmp(a, b, i=i):
            if a == b:
                return 0
            s = K.sign(det3(L[i], reps[a], reps[b])) * flip[i, a] * flip[i, b]
            if s == 0:
                raise UndecidedCoincidence(f"two vertices of line {i} coincide")
            return -s

        line_order.append(sorted(verts, key=cmp_to_key(cmp)))

    edges, edge_base = [], []
    for i, verts in enumerate(line_order):
        edge_base.append(len(edges))
        k = len(verts)
        for t in range(k):
            edges.append(Edge(i, (verts[t], verts[(t + 1) % k]), t))

    # great circles on the double cover; sphere vertex (v, s) is (-1)**s * reps[v]
    he_base, circle, pos = [], [], {}
    total = 0
    for i, verts in enumerate(line_order):
        k = len(verts)
        seq = []
        for t in range(2 * k):
            v = verts[t % k]
            s = 0 if flip[i, v] > 0 else 1
            if t >= k:
                s ^= 1
            seq.append((v, s))
            pos[i, (v, s)] = t
        circle.append(seq)
        he_base.append(total)
        total += 4 * k

    def half_edge(i, t, forward):
        return he_base[i] + 2 * t + (0 if forward else 1)

    he_line, he_t, he_origin = [0] * total, [0] * total, [None] * total
    for i, seq in enumerate(circle):
        m = len(seq)
        for t in range(m):
            h = half_edge(i, t, True)
            he_line[h] = he_line[h + 1] = i
            he_t[h] = he_t[h + 1] = t
            he_origin[h] = seq[t]
            he_origin[h + 1] = seq[(t + 1) % m]

    rot_prev = [0] * total
    for v, g in enumerate(groups):
        for s in (0, 1):
            P = reps[v] if s == 0 else tuple(-x for x in reps[v])
            ref = g[0]
            side = {ref: 1}
            for i in g[1:]:
                side[i] = K.sign(det3(L[ref], L[i], P))
                if side[i] == 0:
                    raise _Undecided

            def cmp(a, b, P=P, side=side):
                if a == b:
                    return 0
                return -K.sign(det3(L[a], L[b], P)) * side[a] * side[b]

            ordered = sorted(g, key=cmp_to_key(cmp))
            ring = []
            for sgn in (1, -1):
                for i in ordered:
                    t = pos[i, (v, s)]
                    m = len(circle[i])
                    if side[i] * sgn > 0:
                        ring.append(half_edge(i, t, True))
                    else:
                        ring.append(half_edge(i, (t - 1) % m, False))
            for idx, h in enumerate(ring):
                rot_prev[h] = ring[idx - 1]

    face_of = [-1] * total
    orbits = []
    for start in range(total):
        if face_of[start] >= 0:
            continue
        orbit, h = [], start
        while face_of[h] < 0:
            face_of[h] = len(orbits)
            orbit.append(h)
            h = rot_prev[h ^ 1]
        if h != start:
            raise SimparrError("face tracing did not close up")
        orbits.append(orbit)

    V, E = len(groups), len(edges)
    if 2 * V - 2 * E + len(orbits) != 2:
        raise SimparrError(f"Euler characteristic of the double cover is not 2 "
                           f"(V={2 * V}, E={2 * E}, F={len(orbits)})")

    def antipode(h):
        i, t = he_line[h], he_t[h]
        m = len(circle[i])
        return half_edge(i, (t + m // 2) % m, h % 2 == 0)

    faces = []
    taken = [False] * len(orbits)
    for f, orbit in enumerate(orbits):
        if taken[f]:
            continue
        partner = face_of[antipode(orbit[0]) ^ 1]
        if partner == f or any(face_of[antipode(h) ^ 1] != partner for h in orbit):
            raise SimparrError("antipodal face pairing is inconsistent")
        taken[f] = taken[partner] = True
        face_edges, face_verts, interior = [], [], [0, 0, 0]
        for h in orbit:
            i, t = he_line[h], he_t[h]
            k = len(line_order[i])
            face_edges.append(edge_base[i] + t % k)
            v, s = he_origin[h]
            face_verts.append(v)
            sgn = 1 if s == 0 else -1
            interior = [interior[c] + sgn * reps[v][c] for c in range(3)]
        faces.append(Face(tuple(face_edges), tuple(face_verts),
                          tuple(K.scalar(x) for x in interior)))

    if V - E + len(faces) != 1:
        raise SimparrError("Euler relation V - E + F = 1 failed")

    lines = A.lines
    vertices = tuple(Vertex(ProjPoint(cross(lines[g[0]].coords, lines[g[1]].coords)), frozenset(g))
                     for g in groups)
    return IncidenceStructure(A, vertices, tuple(edges), tuple(faces),
                              tuple(tuple(vs) for vs in line_order), K.bits)


# -- analyses ------------------------------------------------------------------------


def is_simplicial(S: IncidenceStructure) -> bool:
    return all(f.size == 3 for f in S.faces)


def gauss_bonnet_check(S: IncidenceStructure) -> int:
    """Sum of v_k (k - 3) over the vertex-order histogram."""
    return sum(count * (k - 3) for k, count in S.v_histogram.items())


def double_point_stats(S: IncidenceStructure) -> tuple:
    """(number of double points, whether some edge joins two double points)."""
    count = sum(1 for v in S.vertices if v.order == 2)
    adjacent = any(S.order(e.ends[0]) == 2 and S.order(e.ends[1]) == 2
                   and e.ends[0] != e.ends[1] for e in S.edges)
    return count, adjacent


def near_pencil_center(S: IncidenceStructure) -> Optional[int]:
    """A vertex on all lines but one, if there is one."""
    for v, vert in enumerate(S.vertices):
        if vert.order == S.n - 1:
            return v
    return None


def edges_between(S: IncidenceStructure) -> Counter:
    """Number of edges joining each unordered pair of distinct vertices."""
    return Counter(frozenset(e.ends) for e in S.edges if e.ends[0] != e.ends[1])


@dataclass(frozen=True)
class StarReport:
    center: int
    order: int
    triangles: int
    exterior_vertex_count: int
    exterior_double_point_count: int
    exterior_line_count: int
    center_on_exterior_line: bool
    misplaced_shared_lines: tuple

    def violations(self) -> list:
        k, d = self.order, self.exterior_double_point_count
        out = []
        if self.triangles != 2 * k:
            out.append(f"{self.triangles} incident triangles, expected {2 * k}")
        if self.exterior_vertex_count != 2 * k:
            out.append(f"{self.exterior_vertex_count} exterior vertices, expected {2 * k}")
        if d > k:
            out.append(f"{d} exterior double points exceed the order {k}")
        if self.exterior_line_count != 2 * k - d:
            out.append(f"{self.exterior_line_count} exterior lines, expected {2 * k - d}")
        if self.exterior_line_count < k:
            out.append("fewer exterior lines than the order")
        if self.center_on_exterior_line:
            out.append("an exterior line passes through the center")
        out.extend(self.misplaced_shared_lines)
        return out


def star(S: IncidenceStructure, center: int) -> StarReport:
    """Exterior vertices, double points and lines of the star of a vertex."""
    if not is_simplicial(S):
        raise NotSimplicial("stars are defined for simplicial arrangements")
    if near_pencil_center(S) is not None:
        raise IsNearPencil("the arrangement is a near-pencil")
    tris = [S.faces[f] for f in S.faces_at(center)]
    exterior_edges, exterior_vertices = [], set()
    for f in tris:
        idx = f.vertices.index(center)
        exterior_edges.append(f.edges[(idx + 1) % 3])
        exterior_vertices.update(v for v in f.vertices if v != center)
    d = sum(1 for v in exterior_vertices if S.order(v) == 2)
    by_line = defaultdict(list)
    for e in exterior_edges:
        by_line[S.edges[e].line].append(e)
    center_lines = S.vertices[center].lines
    problems = []
    for line, es in sorted(by_line.items()):
        if len(es) == 1:
            continue
        if len(es) > 2:
            problems.append(f"line {line} carries {len(es)} exterior edges")
            continue
        shared = set(S.edges[es[0]].ends) & set(S.edges[es[1]].ends)
        if len(shared) != 1 or S.order(shared.pop()) != 2:
            problems.append(f"exterior edges on line {line} do not meet at a double point")
    return StarReport(center, S.order(center), len(tris), len(exterior_vertices), d, len(by_line),
                      any(line in center_lines for line in by_line), tuple(problems))


# -- classification -----------------------------------------------------------------


@dataclass(frozen=True)
class FamilyClass:
    family: str
    size: Optional[int] = None

    def __str__(self) -> str:
        return "Unknown" if self.family == "Unknown" else f"{self.family}({self.size})"


UNKNOWN = FamilyClass("Unknown")


def _flag_system(S: IncidenceStructure) -> tuple:
    """Flags of the map and the three involutions acting on them.

    A flag is an occurrence of an edge in a face walk together with one of
    its two ends; flags are numbered 2 * (walk position) + end.
    """
    start, where = [], defaultdict(list)
    total = 0
    for f, face in enumerate(S.faces):
        start.append(total)
        for i, e in enumerate(face.edges):
            where[e].append((f, i))
        total += len(face.edges)
    verts = [None] * (2 * total)
    edges = [None] * (2 * total)
    s0, s1, s2 = [0] * (2 * total), [0] * (2 * total), [0] * (2 * total)
    for f, face in enumerate(S.faces):
        k = len(face.edges)
        for i, e in enumerate(face.edges):
            for end in (0, 1):
                x = 2 * (start[f] + i) + end
                verts[x] = face.vertices[(i + end) % k]
                edges[x] = e
                s0[x] = x ^ 1
                s1[x] = (2 * (start[f] + (i + 1) % k) if end else
                         2 * (start[f] + (i - 1) % k) + 1)
    for x in range(2 * total):
        e, v = edges[x], verts[x]
        pos = x // 2
        for f, i in where[e]:
            y = 2 * (start[f] + i)
            if y // 2 == pos:
                continue
            s2[x] = y if verts[y] == v else y + 1
    return verts, edges, (s0, s1, s2)


def _flag_profile(S: IncidenceStructure, verts, edges) -> list:
    sizes = {}
    for f, face in enumerate(S.faces):
        for e in face.edges:
            sizes.setdefault(e, []).append(face.size)
    per_line = [len(v) for v in S.line_vertices]
    return [(S.vertices[verts[x]].order, per_line[S.edges[edges[x]].line], tuple(sorted(sizes[edges[x]])))
            for x in range(len(verts))]


def isomorphic(S1: IncidenceStructure, S2: IncidenceStructure) -> bool:
    """Combinatorial equivalence of two arrangements.

    Both structures are maps on the projective plane; a map isomorphism is
    fixed by the image of one flag, so each candidate image is checked by a
    single traversal.  Lines must correspond as well.
    """
    if S1.invariant_vector() != S2.invariant_vector():
        return False
    v1, e1, ops1 = _flag_system(S1)
    v2, e2, ops2 = _flag_system(S2)
    if len(v1) != len(v2):
        return False
    if not v1:
        return True
    p1, p2 = _flag_profile(S1, v1, e1), _flag_profile(S2, v2, e2)
    for y0 in range(len(v2)):
        if p2[y0] != p1[0]:
            continue
        if _extend(S1, S2, v1, e1, ops1, v2, e2, ops2, y0):
            return True
    return False


def _extend(S1, S2, v1, e1, ops1, v2, e2, ops2, y0) -> bool:
    image = {0: y0}
    used = {y0}
    stack = [0]
    while stack:
        x = stack.pop()
        y = image[x]
        for op1, op2 in zip(ops1, ops2):
            a, b = op1[x], op2[y]
            if a in image:
                if image[a] != b:
                    return False
            else:
                if b in used:
                    return False
                image[a] = b
                used.add(b)
                stack.append(a)
    if len(image) != len(v1):
        return False
    vmap, lmap = {}, {}
    for x, y in image.items():
        if vmap.setdefault(v1[x], v2[y]) != v2[y]:
            return False
        l1, l2 = S1.edges[e1[x]].line, S2.edges[e2[y]].line
        if lmap.setdefault(l1, l2) != l2:
            return False
    return len(set(lmap.values())) == len(lmap)


@lru_cache(maxsize=None)
def _reference(m: int, with_infinity: bool) -> IncidenceStructure:
    from .families import RegularSpec, gen_regular

    return build_incidence(gen_regular(RegularSpec(m, with_infinity)))


def classify_family(S: IncidenceStructure) -> FamilyClass:
    """R0(k), R1(m), R2(m) or Unknown, by comparison with generated models."""
    if not is_simplicial(S):
        raise NotSimplicial("only simplicial arrangements are classified")
    if near_pencil_center(S) is not None:
        return FamilyClass("R0", S.n - 1)
    n = S.n
    if n % 2 == 0 and n // 2 >= 3:
        m = n // 2
        if isomorphic(S, _reference(m, False)):
            return FamilyClass("R1", m)
    elif n % 2 == 1 and (n - 1) // 2 >= 4 and ((n - 1) // 2) % 2 == 0:
        m = (n - 1) // 2
        if isomorphic(S, _reference(m, True)):
            return FamilyClass("R2", m)
    return UNKNOWN


def analysis_report(S: IncidenceStructure) -> dict:
    """The JSON-ready summary of an incidence structure."""
    simplicial = is_simplicial(S)
    dp, adjacent = double_point_stats(S)
    family = str(classify_family(S)) if simplicial else None
    return {
        "n": S.n,
        "V": S.V,
        "E": S.E,
        "F": S.F,
        "v_histogram": {str(k): c for k, c in S.v_histogram.items()},
        "simplicial": simplicial,
        "double_points": dp,
        "adjacent_double_pair": adjacent,
        "family": family,
        "gauss_bonnet": gauss_bonnet_check(S),
    }
