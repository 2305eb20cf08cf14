"""Points, lines and transformations of the real projective plane.

Coordinates are homogeneous triples of scalars and are never normalised;
equality is decided by the vanishing of 2x2 minors, so interval coordinates
work the same way as exact ones.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exceptions import IdenticalPoints, SingularTransform, UndecidedEquality
from .scalar import IntervalReal, Scalar, Sign, format_rational, sign_of, to_scalar


def cross(u: Sequence, v: Sequence) -> tuple:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def dot(u: Sequence, v: Sequence):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(a: Sequence, b: Sequence, c: Sequence):
    return dot(a, cross(b, c))


def _triple(values) -> tuple:
    values = tuple(to_scalar(v) for v in values)
    if len(values) != 3:
        raise ValueError("homogeneous coordinates need exactly three entries")
    signs = [sign_of(v) for v in values]
    if not any(s.nonzero for s in signs):
        if all(s is Sign.ZERO for s in signs):
            raise ValueError("all homogeneous coordinates are zero")
        raise UndecidedEquality("cannot certify a nonzero coordinate")
    return values


def _vanishes(vec: Sequence) -> bool:
    """True if every entry is zero; raises when that cannot be decided."""
    undecided = False
    for v in vec:
        s = sign_of(v)
        if s.nonzero:
            return False
        if s is Sign.UNDECIDED:
            undecided = True
    if undecided:
        raise UndecidedEquality("could not certify projective (in)equality")
    return True


class _Homogeneous:
    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction, IntervalReal)):
            coords = tuple(coords[0])
        object.__setattr__(self, "coords", _triple(coords))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return 3

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return _vanishes(cross(self.coords, other.coords))

    __hash__ = None

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coords)

    def to_float(self) -> tuple[float, float, float]:
        return tuple(float(c) for c in self.coords)

    def __repr__(self):
        inner = ":".join(format_rational(c) if isinstance(c, Fraction) else f"{float(c):.6g}"
                         for c in self.coords)
        return f"{type(self).__name__}[{inner}]"


class ProjPoint(_Homogeneous):
    """A point [x:y:z]."""

    __slots__ = ()

    def affine(self) -> tuple[float, float] | None:
        """Float coordinates in the chart z = 1, or None at infinity."""
        x, y, z = self.to_float()
        if sign_of(self.coords[2]) is Sign.ZERO or z == 0.0:
            return None
        return x / z, y / z


class ProjLine(_Homogeneous):
    """The line {[x:y:z] : a x + b y + c z = 0}."""

    __slots__ = ()

    def format(self) -> str:
        return " ".join(format_rational(c) if isinstance(c, Fraction) else str(c.mid())
                        for c in self.coords)


LINE_AT_INFINITY_COEFFS = (0, 0, 1)


def join(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    """The line through two distinct points."""
    c = cross(P.coords, Q.coords)
    if _vanishes(c):
        raise IdenticalPoints(f"{P} and {Q} coincide")
    return ProjLine(c)


def meet(L: ProjLine, M: ProjLine) -> ProjPoint:
    """The intersection point of two distinct lines."""
    c = cross(L.coords, M.coords)
    if _vanishes(c):
        raise IdenticalPoints(f"{L} and {M} coincide")
    return ProjPoint(c)


def incident(P: ProjPoint, L: ProjLine, *, snap=None) -> Sign:
    return sign_of(dot(P.coords, L.coords), snap=snap)


def collinear(P: ProjPoint, Q: ProjPoint, R: ProjPoint, *, snap=None) -> Sign:
    """Sign of det[P; Q; R]; ZERO exactly when the points are collinear."""
    return sign_of(det3(P.coords, Q.coords, R.coords), snap=snap)


def concurrent(L: ProjLine, M: ProjLine, N: ProjLine, *, snap=None) -> Sign:
    return sign_of(det3(L.coords, M.coords, N.coords), snap=snap)


def dualize_point(P: ProjPoint) -> ProjLine:
    return ProjLine(P.coords)


def dualize_line(L: ProjLine) -> ProjPoint:
    return ProjPoint(L.coords)


def _mat_vec(m, v):
    return tuple(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] for i in range(3))


def _det_matrix(m):
    return det3(m[0], m[1], m[2])


class ProjTransform:
    """An invertible 3x3 matrix acting on homogeneous coordinates."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        rows = tuple(tuple(to_scalar(x) for x in row) for row in matrix)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a projective transform is a 3x3 matrix")
        s = sign_of(_det_matrix(rows))
        if s is Sign.ZERO:
            raise SingularTransform("determinant is zero")
        if s is Sign.UNDECIDED:
            raise SingularTransform("could not certify a nonzero determinant")
        object.__setattr__(self, "matrix", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ProjTransform is immutable")

    @property
    def det(self) -> Scalar:
        return _det_matrix(self.matrix)

    def adjugate_transpose(self) -> tuple:
        """Cofactor matrix, equal to det(T) times the inverse transpose."""
        m = self.matrix
        return (cross(m[1], m[2]), cross(m[2], m[0]), cross(m[0], m[1]))

    def __call__(self, P: ProjPoint) -> ProjPoint:
        return apply_transform(self, P)


def apply_transform(T: ProjTransform, P: ProjPoint) -> ProjPoint:
    return ProjPoint(_mat_vec(T.matrix, P.coords))


def transform_line(T: ProjTransform, L: ProjLine) -> ProjLine:
    """Contragredient action: the image line of L under T (uses T^-T up to scale)."""
    return ProjLine(_mat_vec(T.adjugate_transpose(), L.coords))


def parse_line(text: str) -> ProjLine:
    parts = text.split()
    if len(parts) != 3:
        raise ValueError(f"expected three coefficients, got {len(parts)}: {text!r}")
    return ProjLine(parts)


def format_line(L: ProjLine) -> str:
    return L.format()
