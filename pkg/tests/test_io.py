import io
from fractions import Fraction

import pytest

from simparr.arrangement import Arrangement, analysis_report, build_incidence
from simparr.cubics import WeierstrassCubic, gen_coset_dual_arrangement
from simparr.exceptions import ArrangementFileError
from simparr.families import gen_family
from simparr.io import (as_backend, decimal_digits, format_arrangement, parse_arrangement,
                        read_arrangement, write_arrangement)
from simparr.projective import ProjLine


def _round_trip(A, family=None):
    text = format_arrangement(A, family=family)
    B, headers = parse_arrangement(text)
    return B, headers, text


def test_rational_file_is_exact():
    A = Arrangement((ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(Fraction(1, 3), -1, 2)))
    B, headers, text = _round_trip(A)
    assert text.splitlines()[0] == "# simparr arrangement"
    assert "precision-bits" not in headers
    assert B.lines == A.lines and B.backend == "rational"


@pytest.mark.parametrize("family,size", [("R0", 4), ("R1", 4), ("R1", 6), ("R1", 12), ("R2", 6),
                                         ("R2", 12)])
def test_generated_round_trip(family, size):
    A = gen_family(family, size)
    B, headers, _ = _round_trip(A, f"{family} {size}")
    assert headers["family"] == f"{family} {size}"
    assert analysis_report(build_incidence(B)) == analysis_report(build_incidence(A))


def test_coset_round_trip_declares_supported_precision():
    A = gen_coset_dual_arrangement(WeierstrassCubic(-1, 1), 24)
    B, headers, _ = _round_trip(A, "coset 24")
    bits = int(headers["precision-bits"])
    assert 53 <= bits <= 256
    assert analysis_report(build_incidence(B)) == analysis_report(build_incidence(A))


def test_decimal_width_follows_precision():
    text = format_arrangement(gen_family("R1", 3), bits=100)
    row = text.splitlines()[-1].split()
    digits = max(len(t.lstrip("-").replace(".", "").lstrip("0")) for t in row)
    assert digits <= decimal_digits(100)
    assert "# precision-bits: 100" in text


def test_stream_and_path_io(tmp_path):
    A = gen_family("R0", 3)
    buf = io.StringIO()
    write_arrangement(A, buf)
    path = tmp_path / "a.txt"
    write_arrangement(A, path)
    assert read_arrangement(io.StringIO(buf.getvalue()))[0].lines == read_arrangement(path)[0].lines


@pytest.mark.parametrize("text", [
    "1 0\n",
    "1 0 0\n0 1 x\n",
    "# precision-bits: ten\n1 0 0\n",
    "# precision-bits: 20\n1 0 0\n",
    "0 0 0\n",
    "1/0 1 1\n",
])
def test_malformed_files(text):
    with pytest.raises(ArrangementFileError):
        parse_arrangement(text)


def test_missing_file(tmp_path):
    with pytest.raises(ArrangementFileError):
        read_arrangement(tmp_path / "absent.txt")


def test_rational_to_interval_backend():
    A = gen_family("R1", 4)
    B = as_backend(A, "interval")
    assert B.backend == "interval"
    assert analysis_report(build_incidence(B)) == analysis_report(build_incidence(A))
    assert as_backend(A, None) is A


def test_interval_cannot_become_rational():
    with pytest.raises(ArrangementFileError):
        as_backend(gen_family("R1", 3), "rational")
