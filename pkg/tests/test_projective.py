import random
from fractions import Fraction

import pytest

from simparr.exceptions import IdenticalPoints, SingularTransform
from simparr.projective import (ProjLine, ProjPoint, ProjTransform, apply_transform, collinear,
                                concurrent, dualize_line, dualize_point, format_line, incident, join,
                                meet, parse_line, transform_line)
from simparr.scalar import Sign, cos_pi, sin_pi


def _rand_q(rng):
    return Fraction(rng.randint(-50, 50), rng.randint(1, 20))


def _rand_point(rng):
    while True:
        coords = [_rand_q(rng) for _ in range(3)]
        if any(coords):
            return ProjPoint(coords)


def _rand_transform(rng):
    while True:
        try:
            return ProjTransform([[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)])
        except SingularTransform:
            continue


def test_equality_is_projective():
    assert ProjPoint(1, 2, 3) == ProjPoint(-2, -4, -6)
    assert ProjPoint(1, 2, 3) != ProjPoint(1, 2, 4)
    assert ProjLine(0, 0, 1) == ProjLine(0, 0, Fraction(-1, 2))


def test_all_zero_coordinates_rejected():
    with pytest.raises(ValueError):
        ProjPoint(0, 0, 0)


def test_duality_involution():
    rng = random.Random(11)
    for _ in range(1000):
        P = _rand_point(rng)
        assert dualize_line(dualize_point(P)) == P


def test_join_meet_adjointness():
    rng = random.Random(12)
    checked = 0
    while checked < 300:
        P, Q, R = (_rand_point(rng) for _ in range(3))
        if collinear(P, Q, R) is Sign.ZERO:
            continue
        checked += 1
        L = join(P, Q)
        assert incident(P, L) is Sign.ZERO and incident(Q, L) is Sign.ZERO
        assert meet(join(P, Q), join(P, R)) == P


def test_identical_points_have_no_join():
    with pytest.raises(IdenticalPoints):
        join(ProjPoint(1, 1, 1), ProjPoint(2, 2, 2))


def test_collinearity_is_transform_invariant():
    rng = random.Random(13)
    for _ in range(200):
        T = _rand_transform(rng)
        P, Q = _rand_point(rng), _rand_point(rng)
        if P == Q:
            continue
        # a third point on PQ half the time
        R = ProjPoint(tuple(a + 3 * b for a, b in zip(P.coords, Q.coords))) if rng.random() < 0.5 \
            else _rand_point(rng)
        before = collinear(P, Q, R) is Sign.ZERO
        after = collinear(T(P), T(Q), T(R)) is Sign.ZERO
        assert before == after


def test_transform_line_keeps_incidence():
    rng = random.Random(14)
    for _ in range(200):
        T = _rand_transform(rng)
        P, Q = _rand_point(rng), _rand_point(rng)
        if P == Q:
            continue
        L = join(P, Q)
        assert incident(apply_transform(T, P), transform_line(T, L)) is Sign.ZERO


def test_singular_transform_rejected():
    with pytest.raises(SingularTransform):
        ProjTransform([[1, 2, 3], [2, 4, 6], [0, 0, 1]])


def test_concurrent_lines_through_origin():
    assert concurrent(ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(1, 1, 0)) is Sign.ZERO
    assert concurrent(ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(1, 1, 1)).nonzero


def test_interval_points_on_unit_circle_tangent():
    # tangent to the unit circle at angle pi/3 passes through its touching point
    L = ProjLine(cos_pi(1, 3), sin_pi(1, 3), -1)
    P = ProjPoint(cos_pi(1, 3), sin_pi(1, 3), 1)
    assert incident(P, L, snap=Fraction(1, 10 ** 30)) is Sign.ZERO
    assert incident(P, L) is Sign.UNDECIDED


def test_line_text_round_trip():
    L = parse_line("1/2 -3 0")
    assert format_line(L) == "1/2 -3 0"
    with pytest.raises(ValueError):
        parse_line("1 2")
