"""Number backends: exact rationals and re-evaluable certified intervals.

Rationals are plain :class:`fractions.Fraction` values.  Intervals wrap
``mpmath.iv`` enclosures together with an expression handle, a callable
``bits -> ivmpf`` that recomputes the enclosure from its symbolic source, so
that raising the precision actually tightens the enclosure instead of
re-rounding stale endpoints.
"""

from __future__ import annotations

import enum
import math
from contextlib import contextmanager
from fractions import Fraction
from typing import Callable, Iterator, Union

from mpmath import iv, mp, mpf
from mpmath.libmp import mpf_sign

from .exceptions import IntervalDivisionError, MaxPrecisionExceeded

PRECISION_LADDER = (53, 128, 256, 1024)
DEFAULT_CAP = 1024

_settings = {"cap": DEFAULT_CAP}


class Sign(enum.Enum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1
    UNDECIDED = None

    @property
    def certain(self) -> bool:
        return self is not Sign.UNDECIDED

    @property
    def nonzero(self) -> bool:
        return self is Sign.NEGATIVE or self is Sign.POSITIVE

    def __neg__(self) -> "Sign":
        if self is Sign.NEGATIVE:
            return Sign.POSITIVE
        if self is Sign.POSITIVE:
            return Sign.NEGATIVE
        return self

    def __mul__(self, other: "Sign") -> "Sign":
        if Sign.ZERO in (self, other):
            return Sign.ZERO
        if Sign.UNDECIDED in (self, other):
            return Sign.UNDECIDED
        return Sign(self.value * other.value)


def get_precision_cap() -> int:
    return _settings["cap"]


@contextmanager
def precision_cap(bits: int) -> Iterator[None]:
    """Temporarily change the precision cap used by sign escalation."""
    if bits < PRECISION_LADDER[0]:
        raise ValueError(f"precision cap must be at least {PRECISION_LADDER[0]} bits")
    old = _settings["cap"]
    _settings["cap"] = bits
    try:
        yield
    finally:
        _settings["cap"] = old


def precision_ladder(start: int = 53, cap: int | None = None) -> list[int]:
    """Precisions to try, starting at ``start`` and never exceeding ``cap``."""
    cap = get_precision_cap() if cap is None else cap
    rungs = [start] + [p for p in PRECISION_LADDER if start < p <= cap]
    if cap > rungs[-1] and cap not in rungs:
        rungs.append(cap)
    return rungs


@contextmanager
def working_precision(bits: int) -> Iterator[None]:
    """Set the precision of both the interval and the plain mpmath contexts."""
    old, old_mp = iv.prec, mp.prec
    iv.prec = mp.prec = bits
    try:
        yield
    finally:
        iv.prec, mp.prec = old, old_mp


# -- raw enclosure helpers --------------------------------------------------


def rational_enclosure(q: Union[int, Fraction]) -> "iv.mpf":
    """Enclosure of an exact rational at the current ``iv.prec``."""
    q = Fraction(q)
    if q.denominator == 1:
        return iv.mpf(q.numerator)
    return iv.mpf(q.numerator) / q.denominator


def exact_mpf(x, lower: bool = True) -> mpf:
    """An mpf equal to x without rounding (interval inputs give the chosen endpoint)."""
    if isinstance(x, iv.mpf):
        return mp.make_mpf(x._mpi_[0] if lower else x._mpi_[1])
    if isinstance(x, mpf):
        return x
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        if q.denominator == 1:
            return mp.make_mpf(mpf(q.numerator, prec=max(53, abs(q.numerator).bit_length()))._mpf_)
        enc = rational_enclosure(q)
        return mp.make_mpf(enc._mpi_[0] if lower else enc._mpi_[1])
    if isinstance(x, float):
        return mpf(x)
    return mpf(x)


def raw_sign(v, snap=None) -> Sign:
    """Sign of an ``ivmpf`` enclosure; ZERO only inside ``[-snap, snap]``."""
    lo, hi = v._mpi_
    if mpf_sign(lo) > 0:
        return Sign.POSITIVE
    if mpf_sign(hi) < 0:
        return Sign.NEGATIVE
    if snap is not None:
        if not isinstance(snap, mpf):
            snap = exact_mpf(snap)
        if abs(mp.make_mpf(lo)) <= snap and abs(mp.make_mpf(hi)) <= snap:
            return Sign.ZERO
    return Sign.UNDECIDED


def contains_zero(v) -> bool:
    lo, hi = v._mpi_
    return mpf_sign(lo) <= 0 <= mpf_sign(hi)


# -- IntervalReal ------------------------------------------------------------


class IntervalReal:
    """Certified enclosure ``[lo, hi]`` of a real number.

    ``expr(bits)`` must return an ``ivmpf`` enclosing the same real number for
    every precision; it is called with ``iv.prec`` already set to ``bits``.
    """

    __slots__ = ("_expr", "_cache", "precision_bits")

    def __init__(self, expr: Callable[[int], object], precision_bits: int = 53):
        if precision_bits < 2:
            raise ValueError("precision_bits must be positive")
        self._expr = expr
        self._cache: dict[int, object] = {}
        self.precision_bits = precision_bits
        self.at(precision_bits)

    @classmethod
    def exact(cls, q: Union[int, Fraction], precision_bits: int = 53) -> "IntervalReal":
        q = Fraction(q)
        return cls(lambda bits: rational_enclosure(q), precision_bits)

    @classmethod
    def fixed(cls, lo, hi, precision_bits: int = 53) -> "IntervalReal":
        """An enclosure with no symbolic source; escalation cannot shrink it.

        Endpoints are kept exactly and rounded outward only when evaluated.
        """
        lo, hi = exact_mpf(lo, lower=True), exact_mpf(hi, lower=False)
        if lo > hi:
            raise ValueError("lo must not exceed hi")
        return cls(lambda bits: iv.mpf([lo, hi]), precision_bits)

    def at(self, bits: int):
        """The enclosure evaluated at ``bits`` of working precision."""
        try:
            return self._cache[bits]
        except KeyError:
            pass
        with working_precision(bits):
            value = self._expr(bits)
        if not isinstance(value, iv.mpf):
            with working_precision(bits):
                value = iv.mpf(value)
        self._cache[bits] = value
        return value

    def with_precision(self, bits: int) -> "IntervalReal":
        out = IntervalReal.__new__(IntervalReal)
        out._expr = self._expr
        out._cache = self._cache
        out.precision_bits = bits
        out.at(bits)
        return out

    @property
    def enclosure(self):
        return self.at(self.precision_bits)

    @property
    def lo(self) -> mpf:
        return mp.make_mpf(self.enclosure._mpi_[0])

    @property
    def hi(self) -> mpf:
        return mp.make_mpf(self.enclosure._mpi_[1])

    @property
    def width(self) -> mpf:
        return self.hi - self.lo

    def mid(self) -> mpf:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.mid())

    def contains(self, value) -> bool:
        v = mpf(value) if not isinstance(value, Fraction) else None
        if v is None:
            with working_precision(self.precision_bits + 64):
                r = rational_enclosure(value)
            return self.lo <= mpf(r.a) and mpf(r.b) <= self.hi
        return self.lo <= v <= self.hi

    def __repr__(self) -> str:
        return f"IntervalReal([{self.lo}, {self.hi}], {self.precision_bits} bits)"

    # arithmetic

    def _combine(self, other, op) -> "IntervalReal":
        other = as_interval(other)
        if other is None:
            return NotImplemented
        a, b = self, other
        return IntervalReal(lambda bits: op(a.at(bits), b.at(bits)),
                            max(a.precision_bits, b.precision_bits))

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    def __radd__(self, other):
        return self._combine(other, lambda x, y: y + x)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._combine(other, lambda x, y: y - x)

    def __mul__(self, other):
        return self._combine(other, lambda x, y: x * y)

    def __rmul__(self, other):
        return self._combine(other, lambda x, y: y * x)

    def __truediv__(self, other):
        return self._combine(other, _checked_div)

    def __rtruediv__(self, other):
        return self._combine(other, lambda x, y: _checked_div(y, x))

    def __neg__(self):
        a = self
        return IntervalReal(lambda bits: -a.at(bits), a.precision_bits)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        a = self
        return IntervalReal(lambda bits: a.at(bits) ** n, a.precision_bits)

    def sqrt(self) -> "IntervalReal":
        a = self

        def expr(bits):
            v = a.at(bits)
            if mpf_sign(v._mpi_[0]) < 0:
                if mpf_sign(v._mpi_[1]) < 0:
                    raise ValueError("square root of a negative interval")
                v = iv.mpf([0, v.b])
            return iv.sqrt(v)

        return IntervalReal(expr, a.precision_bits)


def _checked_div(x, y):
    if contains_zero(y):
        raise IntervalDivisionError("division by an interval containing zero")
    return x / y


Scalar = Union[Fraction, IntervalReal]


def as_interval(x) -> IntervalReal | None:
    if isinstance(x, IntervalReal):
        return x
    if isinstance(x, (int, Fraction)):
        return IntervalReal.exact(x)
    if isinstance(x, float):
        return IntervalReal.exact(Fraction(x))
    return None


def to_scalar(x) -> Scalar:
    """Coerce ints, strings and floats into a backend scalar."""
    if isinstance(x, (Fraction, IntervalReal)):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a scalar")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


# -- constructors for trigonometric sources -----------------------------------


def cos_pi(num: int, den: int, precision_bits: int = 53) -> IntervalReal:
    """Enclosure of cos(num*pi/den)."""
    return IntervalReal(lambda bits: iv.cos(iv.pi * num / den), precision_bits)


def sin_pi(num: int, den: int, precision_bits: int = 53) -> IntervalReal:
    """Enclosure of sin(num*pi/den)."""
    return IntervalReal(lambda bits: iv.sin(iv.pi * num / den), precision_bits)


def sqrt(x) -> IntervalReal:
    return as_interval(x).sqrt()


# -- sign evaluation -----------------------------------------------------------


def sign_of(x, *, snap=None, cap: int | None = None) -> Sign:
    """Certified sign of a scalar.

    Rationals are exact.  Intervals are re-evaluated up the precision ladder
    until the enclosure excludes zero; ``snap`` (a positive bound) lets an
    enclosure inside ``[-snap, snap]`` count as ZERO.
    """
    if isinstance(x, (int, Fraction)):
        return Sign((x > 0) - (x < 0))
    if not isinstance(x, IntervalReal):
        raise TypeError(f"not a scalar: {x!r}")
    snap_mpf = None if snap is None else mpf(snap if not isinstance(snap, Fraction)
                                             else mpf(snap.numerator) / snap.denominator)
    for bits in precision_ladder(x.precision_bits, cap):
        s = raw_sign(x.at(bits), snap_mpf)
        if s.certain:
            return s
    return Sign.UNDECIDED


def escalate_precision(x: IntervalReal, target_bits: int, cap: int | None = None) -> IntervalReal:
    cap = get_precision_cap() if cap is None else cap
    if target_bits > cap:
        raise MaxPrecisionExceeded(f"{target_bits} bits exceeds the cap of {cap}")
    if target_bits <= x.precision_bits:
        raise ValueError("target precision must exceed the current precision")
    return x.with_precision(target_bits)


# -- algebraic separation bounds -----------------------------------------------


def totient(n: int) -> int:
    result, p, m = n, 2, n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cyclotomic_degree(*orders: int) -> int:
    """Degree of the cyclotomic field containing roots of unity of the given orders."""
    return totient(math.lcm(*orders))


def separation_bound(height, degree: int) -> mpf:
    """Lower bound on |a| for a nonzero algebraic integer a.

    ``a`` must lie in a number field of the given degree with every
    conjugate bounded by ``height``; since its norm is a nonzero integer,
    ``|a| >= height ** -(degree - 1)``.
    """
    height = max(mpf(height), mpf(1))
    with working_precision(64):
        b = iv.mpf(height) ** (degree - 1)
    return 1 / mpf(b.b)


# -- text form -------------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, ``p`` or a decimal literal; accepts a leading U+2212 minus."""
    s = text.strip().replace("−", "-")
    if not s:
        raise ValueError("empty rational")
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc
    return q


def format_rational(q: Union[int, Fraction]) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
