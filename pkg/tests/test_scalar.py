from fractions import Fraction
from math import gcd

import gmpy2
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import iv

from simparr.exceptions import IntervalDivisionError, MaxPrecisionExceeded
from simparr.scalar import (IntervalReal, Sign, as_interval, cos_pi, cyclotomic_degree,
                            escalate_precision, exact_mpf, format_rational, parse_rational,
                            precision_cap, separation_bound, sign_of, sqrt, totient,
                            working_precision)

rationals = st.fractions(max_denominator=10 ** 6).filter(lambda q: abs(q) < 10 ** 9)


def _mpq(q: Fraction):
    return gmpy2.mpq(q.numerator, q.denominator)


@settings(max_examples=200, deadline=None)
@given(rationals, rationals, rationals)
def test_rational_arithmetic_matches_gmpy2(a, b, c):
    ours = (a * b - c) / (a * a + 1)
    theirs = (_mpq(a) * _mpq(b) - _mpq(c)) / (_mpq(a) * _mpq(a) + 1)
    assert ours == Fraction(int(theirs.numerator), int(theirs.denominator))
    assert sign_of(ours).value == gmpy2.sign(theirs)


@settings(max_examples=100, deadline=None)
@given(rationals, rationals)
def test_interval_of_rational_encloses_it(a, b):
    x = IntervalReal.exact(a) * IntervalReal.exact(b) + a
    assert x.contains(a * b + a)


def test_exact_signs():
    assert sign_of(Fraction(-3, 7)) is Sign.NEGATIVE
    assert sign_of(0) is Sign.ZERO
    assert sign_of(Fraction(1, 10 ** 30)) is Sign.POSITIVE


def test_interval_zero_needs_a_snap():
    two = sqrt(2) * sqrt(2) - 2
    assert sign_of(two) is Sign.UNDECIDED
    assert sign_of(two, snap=Fraction(1, 10 ** 20)) is Sign.ZERO


def test_escalation_separates_close_values():
    # 2^-200 apart: invisible at 53 bits, certified once precision climbs
    tiny = IntervalReal(lambda bits: iv.mpf(2) ** -200, 53)
    assert sign_of(cos_pi(1, 3) - Fraction(1, 2) + tiny) is Sign.POSITIVE


def test_precision_cap_limits_escalation():
    tiny = IntervalReal(lambda bits: iv.mpf(2) ** -200, 53)
    x = cos_pi(1, 3) - Fraction(1, 2) + tiny
    with precision_cap(128):
        assert sign_of(x) is Sign.UNDECIDED
    with pytest.raises(MaxPrecisionExceeded):
        escalate_precision(x, 4096)


def test_division_by_interval_around_zero():
    with pytest.raises(IntervalDivisionError):
        _ = IntervalReal.exact(1) / (sqrt(2) * sqrt(2) - 2)


def test_fixed_keeps_endpoints_exactly():
    with working_precision(200):
        lo = iv.mpf(1) / 3
        hi = lo + iv.mpf(2) ** -180
    x = IntervalReal.fixed(lo, hi, 200)
    assert x.lo == exact_mpf(lo) and x.hi == exact_mpf(hi, lower=False)
    assert x.width > 0


def test_totient_against_gcd_count():
    for n in range(1, 200):
        assert totient(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
    assert cyclotomic_degree(12, 4) == 4


def test_separation_bound_is_below_a_known_unit():
    # 2cos(2pi/7) is a cubic algebraic integer whose conjugates lie in [-2, 2]
    bound = separation_bound(2, 3)
    assert float(bound) <= 0.25
    value = 2 * cos_pi(2, 7)
    assert abs(float(value.mid())) > float(bound)


@pytest.mark.parametrize("text,value", [("3/4", Fraction(3, 4)), ("−2", Fraction(-2)),
                                        ("0.125", Fraction(1, 8)), ("7", Fraction(7))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


def test_parse_rational_rejects_junk():
    for bad in ("", "1/0", "abc"):
        with pytest.raises(ValueError):
            parse_rational(bad)


@settings(max_examples=100)
@given(rationals)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_as_interval_promotes_rationals():
    assert as_interval(Fraction(1, 3)).contains(Fraction(1, 3))
