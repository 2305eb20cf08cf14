"""Arrangement files: UTF-8 text, one "a b c" row per line, '#' comments.

Rational rows are written exactly.  Interval coordinates are written as
decimals with a ``# precision-bits: N`` header, N being no more than the
enclosures support.  Reading such a file turns every decimal v back into an
interval of radius max(|v|, 1) * 10**(1 - D), D digits being implied by N,
and installs a snap tolerance so incidences are re-certified, not trusted.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from pathlib import Path
from typing import Optional, TextIO, Union

import mpmath
from mpmath import iv, mp, mpf

from .arrangement import Arrangement
from .exceptions import ArrangementFileError, UndecidedError
from .projective import ProjLine
from .scalar import IntervalReal, format_rational, parse_rational, working_precision

DEFAULT_FILE_BITS = 256
_HEADER = re.compile(r"#\s*([a-z-]+)\s*:\s*(.*?)\s*$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?$")


def decimal_digits(bits: int) -> int:
    """Significant digits written for a coordinate held at ``bits`` of precision."""
    return math.ceil(bits * math.log10(2)) + 2


def file_snap(bits: int) -> mpf:
    """Incidence tolerance for coordinates re-read from a file at ``bits``."""
    return mpf(10) ** (-(decimal_digits(bits) // 2))


def _enclosure(v, bits: int) -> tuple:
    with working_precision(bits + 16):
        e = v.at(bits + 16)
        lo, hi = mp.make_mpf(e._mpi_[0]), mp.make_mpf(e._mpi_[1])
        return (lo + hi) / 2, hi - lo


def supported_bits(v, bits: int) -> int:
    """Largest declared precision (at most ``bits``) that the enclosure of v justifies."""
    if isinstance(v, (int, Fraction)):
        return bits
    mid, width = _enclosure(v, bits)
    if width == 0:
        return bits
    with working_precision(64):
        return min(bits, int(mpmath.floor(mpmath.log(max(abs(mid), 1) / width, 2))) - 5)


def _format_value(v, bits: int) -> str:
    if isinstance(v, (int, Fraction)):
        return format_rational(Fraction(v))
    mid, _ = _enclosure(v, bits)
    with working_precision(bits + 16):
        return mpmath.nstr(mid, decimal_digits(bits), strip_zeros=False)


def format_arrangement(A: Arrangement, *, family: Optional[str] = None,
                       bits: int = DEFAULT_FILE_BITS) -> str:
    """File text; interval data declares the precision its enclosures support."""
    out = ["# simparr arrangement"]
    if family:
        out.append(f"# family: {family}")
    if A.backend == "interval":
        bits = min(supported_bits(v, bits) for L in A.lines for v in L.coords)
        if bits < 53:
            raise ValueError("coordinate enclosures are too wide to serialize")
        out.append(f"# precision-bits: {bits}")
    for L in A.lines:
        out.append(" ".join(_format_value(v, bits) for v in L.coords))
    return "\n".join(out) + "\n"


def write_arrangement(A: Arrangement, target: Union[str, Path, TextIO], **kw) -> None:
    text = format_arrangement(A, **kw)
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)


def _decimal_interval(token: str, bits: int) -> IntervalReal:
    digits = decimal_digits(bits)
    with working_precision(bits + 32):
        v = mpf(token)
        rad = max(abs(v), 1) * mpf(10) ** (1 - digits)
        lo, hi = iv.mpf(v - rad), iv.mpf(v + rad)
        lo, hi = mp.make_mpf(lo._mpi_[0]), mp.make_mpf(hi._mpi_[1])
    return IntervalReal.fixed(lo, hi, bits)


def _parse_token(token: str, bits: Optional[int], lineno: int):
    try:
        if "/" in token or bits is None or re.fullmatch(r"[+-]?\d+", token):
            return parse_rational(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ArrangementFileError(f"line {lineno}: bad coefficient {token!r}") from exc
    if not _DECIMAL.match(token):
        raise ArrangementFileError(f"line {lineno}: bad coefficient {token!r}")
    return _decimal_interval(token, bits)


def parse_arrangement(text: str, label: str = "") -> tuple[Arrangement, dict]:
    """Parse file contents into an arrangement plus the header fields."""
    headers: dict = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m:
                headers[m.group(1)] = m.group(2)
            continue
        rows.append((lineno, line.split("#", 1)[0].split()))
    bits = None
    if "precision-bits" in headers:
        try:
            bits = int(headers["precision-bits"])
        except ValueError as exc:
            raise ArrangementFileError("precision-bits header is not an integer") from exc
        if bits < 53:
            raise ArrangementFileError("precision-bits must be at least 53")
    lines = []
    for lineno, parts in rows:
        if len(parts) != 3:
            raise ArrangementFileError(f"line {lineno}: expected 3 coefficients, got {len(parts)}")
        coords = [_parse_token(t, bits, lineno) for t in parts]
        try:
            lines.append(ProjLine(coords))
        except (ValueError, UndecidedError) as exc:
            raise ArrangementFileError(f"line {lineno}: {exc}") from exc
    snap = file_snap(bits) if bits is not None else None
    return Arrangement(tuple(lines), snap=snap, label=label), headers


def read_arrangement(source: Union[str, Path, TextIO]) -> tuple[Arrangement, dict]:
    if isinstance(source, (str, Path)):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise ArrangementFileError(f"cannot read {source}: {exc}") from exc
        return parse_arrangement(text, label=str(source))
    return parse_arrangement(source.read())


def _primitive_integers(L: ProjLine) -> tuple:
    coords = [Fraction(c) for c in L.coords]
    den = math.lcm(*(c.denominator for c in coords))
    ints = [int(c * den) for c in coords]
    g = math.gcd(*ints)
    return tuple(v // g for v in ints)


def as_backend(A: Arrangement, backend: Optional[str]) -> Arrangement:
    """Convert to the requested backend.

    A rational arrangement moved to intervals is first scaled to primitive
    integer rows; every determinant of three such rows is an integer, so a
    snap of 1/2 is a sound zero test.  Interval data cannot become exact.
    """
    if backend in (None, A.backend):
        return A
    if backend == "rational":
        raise ArrangementFileError("interval coordinates cannot be converted to the rational backend")
    if backend != "interval":
        raise ArrangementFileError(f"unknown backend {backend!r}")
    lines = tuple(ProjLine([IntervalReal.exact(v) for v in _primitive_integers(L)]) for L in A.lines)
    return Arrangement(lines, snap=Fraction(1, 2), label=A.label)
