"""Real Weierstrass cubics y^2 = x^3 + a x + b: classification, the chord-tangent
group law, torsion points found by certified bisection, and the line
arrangements dual to finite subgroups.

Duality convention: the affine point (x, y) corresponds to the line with
coefficients (x, y, 1); the identity O = [0:1:0] corresponds to (0, 1, 0).  A
line (p, q, r) is tangent to the dual curve exactly when its dual point lies
on the cubic, i.e. when q^2 r - p^3 - a p r^2 - b r^3 = 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
from mpmath import iv, mpf
from mpmath.libmp import mpf_sign

from .arrangement import Arrangement
from .exceptions import (ConvergenceFailure, IntervalDivisionError, SingularPointUsed,
                         UndecidedError, UndecidedSlope)
from .projective import ProjLine
from .scalar import (IntervalReal, Sign, as_interval, contains_zero, precision_ladder,
                     exact_mpf, raw_sign, sign_of, to_scalar, working_precision)

# conic helpers live next door but belong to the same public surface
from .conics import (ConicClass, conic_through_five, verify_alignment_conditions,
                     verify_perturbed_hexagon, verify_regular_alignment_conditions)

__all__ = [
    "CubicClass", "WeierstrassCubic", "CubicPoint", "INFINITY", "parse_cubic", "classify",
    "singular_point", "point", "on_curve", "neg", "add", "scalar_mul", "points_equal",
    "largest_root", "find_order_n_point", "torsion_residual", "torsion_multiples", "dual_line",
    "coset_coincidence", "gen_coset_dual_arrangement", "tangency_signs", "count_tangent_lines",
    "prop_bound_holds", "tangency_report", "ConicClass", "conic_through_five",
    "verify_alignment_conditions", "verify_perturbed_hexagon", "verify_regular_alignment_conditions",
]


class CubicClass(enum.Enum):
    SMOOTH_ONE_COMPONENT = "SmoothOneComponent"
    SMOOTH_TWO_COMPONENTS = "SmoothTwoComponents"
    NODAL = "Nodal"
    CUSPIDAL = "Cuspidal"
    ACNODAL = "Acnodal"

    @property
    def smooth(self) -> bool:
        return self in (CubicClass.SMOOTH_ONE_COMPONENT, CubicClass.SMOOTH_TWO_COMPONENTS)


@dataclass(frozen=True)
class WeierstrassCubic:
    a: object
    b: object

    def __post_init__(self):
        object.__setattr__(self, "a", to_scalar(self.a))
        object.__setattr__(self, "b", to_scalar(self.b))

    @property
    def discriminant_quantity(self):
        """4a^3 + 27b^2; the curve is singular exactly when it vanishes."""
        return 4 * self.a ** 3 + 27 * self.b ** 2

    def rhs(self, x):
        return x ** 3 + self.a * x + self.b

    def homogeneous(self, p, q, r):
        """q^2 r - p^3 - a p r^2 - b r^3, the curve equation at [p:q:r]."""
        return q * q * r - p ** 3 - self.a * p * r * r - self.b * r ** 3

    @property
    def is_exact(self) -> bool:
        return isinstance(self.a, Fraction) and isinstance(self.b, Fraction)


def parse_cubic(text: str) -> WeierstrassCubic:
    """Parse 'a=<rational> b=<rational>'."""
    values = {}
    for part in text.replace(",", " ").split():
        key, sep, value = part.partition("=")
        if not sep or key not in ("a", "b"):
            raise ValueError(f"expected a=<rational> b=<rational>, got {text!r}")
        values[key] = value
    if set(values) != {"a", "b"}:
        raise ValueError(f"expected both a and b in {text!r}")
    return WeierstrassCubic(values["a"], values["b"])


def classify(c: WeierstrassCubic) -> CubicClass:
    s = sign_of(c.discriminant_quantity)
    if s is Sign.UNDECIDED:
        raise UndecidedError("cannot decide the sign of 4a^3 + 27b^2")
    if s is Sign.POSITIVE:
        return CubicClass.SMOOTH_ONE_COMPONENT
    if s is Sign.NEGATIVE:
        return CubicClass.SMOOTH_TWO_COMPONENTS
    sa, sb = sign_of(c.a), sign_of(c.b)
    if sa is Sign.ZERO and sb is Sign.ZERO:
        return CubicClass.CUSPIDAL
    if not sb.certain:
        raise UndecidedError("cannot decide the sign of b")
    # x^3 + a x + b = (x - r)^2 (x + 2r) with r = -3b/(2a): a node when r > 0
    return CubicClass.NODAL if sb is Sign.POSITIVE else CubicClass.ACNODAL


def singular_point(c: WeierstrassCubic) -> Optional[tuple]:
    cls = classify(c)
    if cls.smooth:
        return None
    if cls is CubicClass.CUSPIDAL:
        return (Fraction(0), Fraction(0))
    return (-3 * c.b / (2 * c.a), Fraction(0))


# -- points and the group law ----------------------------------------------------------


@dataclass(frozen=True)
class CubicPoint:
    """An affine point (x, y), or the identity O when both are None."""

    x: object = None
    y: object = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return f"({_fmt(self.x)}, {_fmt(self.y)})"


def _fmt(v) -> str:
    return str(v) if isinstance(v, Fraction) else f"{float(v):.12g}"


INFINITY = CubicPoint()


def point(x, y) -> CubicPoint:
    return CubicPoint(to_scalar(x), to_scalar(y))


def on_curve(c: WeierstrassCubic, P: CubicPoint, *, snap=None) -> Sign:
    """Sign of y^2 - (x^3 + a x + b); ZERO for points on the curve."""
    if P.is_infinity:
        return Sign.ZERO
    return sign_of(P.y * P.y - c.rhs(P.x), snap=snap)


def neg(c: WeierstrassCubic, P: CubicPoint) -> CubicPoint:
    return P if P.is_infinity else CubicPoint(P.x, -P.y)


def _is_zero(value, what) -> bool:
    s = sign_of(value)
    if s is Sign.UNDECIDED:
        raise UndecidedSlope(f"cannot decide whether {what} vanishes")
    return s is Sign.ZERO


def _is_singular(c: WeierstrassCubic, R: CubicPoint) -> bool:
    return sign_of(R.y) is Sign.ZERO and sign_of(3 * R.x * R.x + c.a) is Sign.ZERO


def add(c: WeierstrassCubic, P: CubicPoint, Q: CubicPoint) -> CubicPoint:
    """Chord-tangent addition with identity O and inverse (x, -y)."""
    for R in (P, Q):
        if not R.is_infinity and c.is_exact and isinstance(R.x, Fraction) and isinstance(R.y, Fraction):
            if on_curve(c, R) is not Sign.ZERO:
                raise ValueError(f"{R} is not on the curve")
        if not R.is_infinity and _is_singular(c, R):
            raise SingularPointUsed(f"{R} is the singular point of the curve")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if _is_zero(P.x - Q.x, "x1 - x2"):
        if _is_zero(P.y + Q.y, "y1 + y2"):
            return INFINITY
        lam = (3 * P.x * P.x + c.a) / (2 * P.y)
        x3 = lam * lam - 2 * P.x
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CubicPoint(x3, y3)


def scalar_mul(c: WeierstrassCubic, n: int, P: CubicPoint) -> CubicPoint:
    """n * P by double-and-add; negative n uses -P."""
    if n < 0:
        return scalar_mul(c, -n, neg(c, P))
    result, addend = INFINITY, P
    while n:
        if n & 1:
            result = add(c, result, addend)
        n >>= 1
        if n:
            addend = add(c, addend, addend)
    return result


def points_equal(P: CubicPoint, Q: CubicPoint) -> Sign:
    """ZERO when certified equal, POSITIVE when certified distinct, else UNDECIDED."""
    if P.is_infinity or Q.is_infinity:
        return Sign.ZERO if P.is_infinity and Q.is_infinity else Sign.POSITIVE
    sx, sy = sign_of(P.x - Q.x), sign_of(P.y - Q.y)
    if sx.nonzero or sy.nonzero:
        return Sign.POSITIVE
    if sx is Sign.ZERO and sy is Sign.ZERO:
        return Sign.ZERO
    return Sign.UNDECIDED


# -- torsion by bisection --------------------------------------------------------------


class _Unresolved(Exception):
    pass


def _raw_curve(c: WeierstrassCubic, bits: int):
    return as_interval(c.a).at(bits), as_interval(c.b).at(bits)


def _raw_add(a, P, Q):
    """Raw-interval chord-tangent addition; P, Q affine and certified distinct in x
    or equal (doubling).  Returns None for O."""
    x1, y1 = P
    x2, y2 = Q
    if P is Q:
        if contains_zero(y1):
            raise _Unresolved
        lam = (3 * x1 * x1 + a) / (2 * y1)
        x3 = lam * lam - 2 * x1
    else:
        dx = x2 - x1
        if contains_zero(dx):
            raise _Unresolved
        lam = (y2 - y1) / dx
        x3 = lam * lam - x1 - x2
    return x3, lam * (x1 - x3) - y1


def _raw_multiples(a, b, x, count: int) -> list:
    """[P, 2P, ..., count*P] for P = (x, +sqrt(f(x))), all affine."""
    f = x ** 3 + a * x + b
    if mpf_sign(f._mpi_[0]) <= 0:
        raise _Unresolved
    P = (x, iv.sqrt(f))
    out = [P]
    if count >= 2:
        out.append(_raw_add(a, P, P))
    while len(out) < count:
        out.append(_raw_add(a, out[-1], P))
    return out


def _wrap_state(a, b, x, n: int) -> bool:
    """True when the circle parameter u of P = (x, +y) satisfies n*u > 1.

    Walking k*P for k = 1..n-1 the sign of y changes once (at parameter 1/2);
    changing back means the walk has passed O.  If it has not, the order is
    decided by comparing (n-1)P with -P on the lower half, where x grows with
    the parameter.
    """
    pts = _raw_multiples(a, b, x, n - 1)
    flipped = False
    for (px, py) in pts:
        s = raw_sign(py)
        if not s.nonzero:
            raise _Unresolved
        if s is Sign.NEGATIVE:
            flipped = True
        elif flipped:
            return True
    if not flipped:
        return False
    s = raw_sign(pts[-1][0] - x)
    if not s.nonzero:
        raise _Unresolved
    return s is Sign.POSITIVE


def largest_root(c: WeierstrassCubic, bits: int = 128) -> tuple:
    """Certified bracket [lo, hi] around the largest real root of x^3 + a x + b.

    With one real root any sign change isolates it.  With three, the largest
    lies where f is increasing, so a sign change at lo > 0 with f'(lo) > 0 does.
    """
    one_root = sign_of(c.discriminant_quantity) is Sign.POSITIVE
    A, B = _raw_curve(c, bits)
    with mpmath.workprec(bits + 32):
        coeffs = [mpf(1), mpf(0), _mid(c.a), _mid(c.b)]
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=2 * bits)
        e1 = max(mpmath.re(r) for r in roots if abs(mpmath.im(r)) <= abs(mpmath.re(r)) * 1e-10 + 1e-10)
    delta = mpf(2) ** (-(bits // 2)) * (1 + abs(e1))
    with working_precision(bits):
        for _ in range(60):
            lo, hi = iv.mpf(e1 - delta), iv.mpf(e1 + delta)
            flo, fhi = lo ** 3 + A * lo + B, hi ** 3 + A * hi + B
            if raw_sign(flo) is Sign.NEGATIVE and raw_sign(fhi) is Sign.POSITIVE:
                if one_root or (mpf_sign(lo._mpi_[0]) > 0 and raw_sign(3 * lo * lo + A) is Sign.POSITIVE):
                    return exact_mpf(lo), exact_mpf(hi, lower=False)
            delta *= 2
    raise ConvergenceFailure("could not bracket the largest real root")


def _mid(v) -> mpf:
    if isinstance(v, Fraction):
        return mpf(v.numerator) / v.denominator
    return v.mid()


def find_order_n_point(c: WeierstrassCubic, n: int, tolerance=1e-20, *, bits: int = 128) -> CubicPoint:
    """A point of exact order n on the unbounded component, as a certified enclosure.

    The returned x is an interval that provably contains the x-coordinate of the
    torsion point with circle parameter 1/n.  The residual |x((n-1)P) - x(P)| +
    |y((n-1)P) + y(P)| over that interval is below ``tolerance``.
    """
    if n < 2:
        raise ValueError("order must be at least 2")
    if not classify(c).smooth:
        raise ValueError("torsion search needs a smooth curve")
    if n == 2:
        exact = _rational_largest_root(c)
        if exact is not None:
            return CubicPoint(exact, Fraction(0))
        lo, hi = largest_root(c, bits)
        return CubicPoint(IntervalReal.fixed(lo, hi, bits), Fraction(0))

    last_error = None
    for prec in precision_ladder(bits):
        try:
            lo, hi = _bisect_torsion(c, n, prec)
        except ConvergenceFailure as exc:
            last_error = exc
            continue
        res = torsion_residual(c, n, lo, hi, prec)
        if res is not None and res < tolerance:
            x = IntervalReal.fixed(lo, hi, prec)
            return CubicPoint(x, _branch_y(c, x))
        last_error = ConvergenceFailure(f"residual {res} above tolerance {tolerance}")
    raise last_error or ConvergenceFailure("torsion search failed")


def _branch_y(c: WeierstrassCubic, x: IntervalReal) -> IntervalReal:
    return c.rhs(x).sqrt() if not isinstance(c.rhs(x), Fraction) else as_interval(c.rhs(x)).sqrt()


def _rational_largest_root(c: WeierstrassCubic) -> Optional[Fraction]:
    if not c.is_exact:
        return None
    a, b = c.a, c.b
    den = a.denominator * b.denominator
    # scale x = t / den to get an integer monic polynomial in t
    A, B = a * den * den, b * den ** 3
    if A.denominator != 1 or B.denominator != 1:
        return None
    A, B = int(A), int(B)
    # an integer root divides B, or divides A when B = 0 (then t^2 = -A)
    N = B if B else A
    cands = {0}
    for d in range(1, int(abs(N) ** 0.5) + 2 if N else 1):
        if N % d == 0:
            cands.update((d, -d, N // d, -(N // d)))
    roots = [t for t in cands if t ** 3 + A * t + B == 0]
    if not roots:
        return None
    r = Fraction(max(roots), den)
    # remaining roots solve x^2 + r x + r^2 + a = 0; the larger one exceeds r
    # exactly when sqrt(D) > 3r with D = -3r^2 - 4a
    D = -3 * r * r - 4 * a
    if D >= 0 and (r < 0 or D > 9 * r * r):
        return None
    return r


def _bisect_torsion(c: WeierstrassCubic, n: int, bits: int) -> tuple:
    A, B = _raw_curve(c, bits)
    e_lo, e_hi = largest_root(c, bits)
    with working_precision(bits):
        hi = max(e_hi + 1, mpf(4))
        for _ in range(200):
            try:
                if not _wrap_state(A, B, iv.mpf(hi), n):
                    break
            except _Unresolved:
                pass
            hi = hi * 2 + 1
        else:
            raise ConvergenceFailure("no upper bracket")
        # walk toward the 2-torsion point until the multiples wrap past O
        lo = hi
        for _ in range(4 * bits):
            lo = e_hi + (lo - e_hi) / 2
            try:
                if _wrap_state(A, B, iv.mpf(lo), n):
                    break
            except _Unresolved:
                continue
            hi = lo
        else:
            raise ConvergenceFailure("no lower bracket")
        # invariant: lo wraps (parameter too large), hi does not
        for _ in range(4 * bits):
            mid = (lo + hi) / 2
            if mid <= lo or mid >= hi:
                break
            try:
                wrapped = _wrap_state(A, B, iv.mpf(mid), n)
            except _Unresolved:
                break
            if wrapped:
                lo = mid
            else:
                hi = mid
    return lo, hi


def torsion_residual(c: WeierstrassCubic, n: int, lo, hi, bits: int = 128):
    """Upper bound of |x((n-1)P) - x(P)| + |y((n-1)P) + y(P)| over x in [lo, hi]."""
    A, B = _raw_curve(c, bits)
    with working_precision(bits):
        try:
            pts = _raw_multiples(A, B, iv.mpf([lo, hi]), n - 1)
        except (_Unresolved, IntervalDivisionError):
            return None
        (x1, y1), (xq, yq) = pts[0], pts[-1]
        r = abs(xq - x1) + abs(yq + y1)
        return exact_mpf(r, lower=False)


def torsion_multiples(c: WeierstrassCubic, n: int, P: CubicPoint) -> list:
    """[O, P, 2P, ..., (n-1)P] with raw enclosures derived from P's x-interval.

    Returned as CubicPoints with fixed interval coordinates; every k*P for
    0 < k < n is certified affine (hence not O).
    """
    if n == 2:
        return [INFINITY, P]
    x = as_interval(P.x)
    bits = x.precision_bits
    A, B = _raw_curve(c, bits)
    half = n // 2
    with working_precision(bits):
        try:
            pts = _raw_multiples(A, B, x.at(bits), half)
        except (_Unresolved, IntervalDivisionError) as exc:
            raise UndecidedError("multiples of the torsion point are not separated") from exc
        # k*P = -(n-k)*P for the true torsion point; this halves the error growth
        pts = pts + [(px, -py) for px, py in reversed(pts[: n - 1 - half])]
    out = [INFINITY]
    for px, py in pts:
        out.append(CubicPoint(IntervalReal.fixed(px, px, bits), IntervalReal.fixed(py, py, bits)))
    return out


# -- dual arrangements -------------------------------------------------------------------


def dual_line(P: CubicPoint) -> ProjLine:
    if P.is_infinity:
        return ProjLine(0, 1, 0)
    return ProjLine(P.x, P.y, 1)


def coset_coincidence(n: int):
    """Lines dual to kP meet where the points are collinear: a + b + c = 0 mod n."""

    def key(i: int, j: int):
        c = (-(i + j)) % n
        if c in (i, j):
            return frozenset((i, j))
        return frozenset((i, j, c))

    return key


def gen_coset_dual_arrangement(c: WeierstrassCubic, n: int, offset_index: int = 0,
                               tolerance=1e-20) -> Arrangement:
    """Lines dual to the points of the cyclic subgroup H of order n.

    The coset is H + g with g = offset_index * P, which lies in H, so the
    line set does not depend on ``offset_index``; line i is dual to i*P.
    """
    P = find_order_n_point(c, n, tolerance)
    points = torsion_multiples(c, n, P)
    lines = tuple(dual_line(Q) for Q in points)
    return Arrangement(lines, coset_coincidence(n), label=f"coset(n={n}, offset={offset_index})")


# -- tangency ---------------------------------------------------------------------------------

DEFAULT_TANGENCY_SNAP = 1e-20


def tangency_signs(A: Arrangement, c: WeierstrassCubic, snap=DEFAULT_TANGENCY_SNAP) -> list:
    """Per line: ZERO when its dual point is on the cubic, nonzero when off it."""
    out = []
    for L in A.lines:
        p, q, r = L.coords
        value = c.homogeneous(p, q, r)
        exact = isinstance(value, Fraction)
        out.append(sign_of(value) if exact else sign_of(value, snap=snap))
    return out


def count_tangent_lines(A: Arrangement, c: WeierstrassCubic, snap=DEFAULT_TANGENCY_SNAP) -> int:
    """Lines whose dual point certifiably lies on the cubic (undecided lines excluded)."""
    return sum(1 for s in tangency_signs(A, c, snap) if s is Sign.ZERO)


def prop_bound_holds(n: int, k: int) -> bool:
    """n >= 8k/7 - 3, checked as 7n >= 8k - 21."""
    if k < 0 or n < k:
        raise ValueError("need n >= k >= 0")
    return 7 * n >= 8 * k - 21


def tangency_report(A: Arrangement, c: WeierstrassCubic, snap=DEFAULT_TANGENCY_SNAP) -> dict:
    signs = tangency_signs(A, c, snap)
    k = sum(1 for s in signs if s is Sign.ZERO)
    return {"n": A.n, "k": k, "undecided": sum(1 for s in signs if s is Sign.UNDECIDED),
            "bound_holds": prop_bound_holds(A.n, k)}
