import random
from fractions import Fraction

import mpmath
import pytest

from simparr.arrangement import Arrangement
from simparr.conics import (ConicClass, conic_through_five, verify_perturbed_hexagon,
                            verify_regular_alignment_conditions)
from simparr.cubics import (INFINITY, CubicClass, WeierstrassCubic, add, classify, count_tangent_lines,
                            find_order_n_point, gen_coset_dual_arrangement, neg, on_curve, parse_cubic,
                            point, points_equal, prop_bound_holds, scalar_mul, singular_point,
                            tangency_report, torsion_residual)
from simparr.exceptions import RankDeficient, SingularPointUsed
from simparr.projective import ProjLine, ProjPoint
from simparr.scalar import Sign

MORDELL = WeierstrassCubic(0, 17)


@pytest.mark.parametrize("a,b,expected", [
    (-1, 0, CubicClass.SMOOTH_TWO_COMPONENTS),
    (0, 1, CubicClass.SMOOTH_ONE_COMPONENT),
    (0, 0, CubicClass.CUSPIDAL),
    (-3, 2, CubicClass.NODAL),
    (-3, -2, CubicClass.ACNODAL),
])
def test_classify_examples(a, b, expected):
    assert classify(WeierstrassCubic(a, b)) is expected


def _real_root_count(a, b) -> int:
    with mpmath.workdps(50):
        roots = mpmath.polyroots([1, 0, a, b], maxsteps=200, extraprec=200)
        return sum(1 for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** -30)


def test_smooth_classes_against_root_count():
    """Two components exactly when x^3 + ax + b has three distinct real roots."""
    rng = random.Random(31)
    seen = set()
    for _ in range(400):
        a, b = rng.randint(-30, 30), rng.randint(-60, 60)
        if 4 * a ** 3 + 27 * b ** 2 == 0:
            continue
        cls = classify(WeierstrassCubic(a, b))
        expected = CubicClass.SMOOTH_TWO_COMPONENTS if _real_root_count(a, b) == 3 \
            else CubicClass.SMOOTH_ONE_COMPONENT
        assert cls is expected
        seen.add(cls)
    assert len(seen) == 2


@pytest.mark.parametrize("r", [Fraction(1), Fraction(2), Fraction(1, 3), Fraction(-1), Fraction(-5, 2)])
def test_singular_cubics_from_double_roots(r):
    # x^3 + ax + b = (x - r)^2 (x + 2r); the branch near r is real iff r + 2r > 0
    c = WeierstrassCubic(-3 * r * r, 2 * r ** 3)
    assert classify(c) is (CubicClass.NODAL if r > 0 else CubicClass.ACNODAL)
    assert singular_point(c) == (r, 0)


def test_parse_cubic():
    c = parse_cubic("a=-1 b=1/2")
    assert (c.a, c.b) == (-1, Fraction(1, 2))
    with pytest.raises(ValueError):
        parse_cubic("a=1")


def test_doubling_by_hand():
    # tangent slope at (-2, 3) is 12/6 = 2, so 2P = (4 + 4, 2(-2 - 8) - 3)
    P = point(-2, 3)
    assert add(MORDELL, P, P) == point(8, -23)
    assert on_curve(MORDELL, point(8, -23)) is Sign.ZERO


def test_identity_and_inverse():
    P = point(-1, 4)
    assert add(MORDELL, P, INFINITY) == P
    assert add(MORDELL, P, neg(MORDELL, P)) is INFINITY
    c = WeierstrassCubic(-1, 0)
    assert add(c, point(1, 0), point(1, 0)) is INFINITY


def test_off_curve_point_rejected():
    with pytest.raises(ValueError):
        add(MORDELL, point(0, 0), point(-2, 3))


def test_singular_point_cannot_be_added():
    c = WeierstrassCubic(-3, 2)
    with pytest.raises(SingularPointUsed):
        add(c, point(1, 0), point(-2, 0))


def test_scalar_mul_matches_repeated_addition():
    P = point(-2, 3)
    acc = INFINITY
    for n in range(17):
        assert scalar_mul(MORDELL, n, P) == acc
        assert on_curve(MORDELL, acc) is Sign.ZERO
        acc = add(MORDELL, acc, P)
    assert scalar_mul(MORDELL, -3, P) == neg(MORDELL, scalar_mul(MORDELL, 3, P))


def test_order_two_point_is_exact():
    P = find_order_n_point(WeierstrassCubic(-1, 0), 2)
    assert (P.x, P.y) == (1, 0)


def test_order_three_point_is_the_real_flex():
    # for a = 0 the 3-division polynomial is 3x^4 + 12bx, so the flex with b = 2 has x = 0
    c = WeierstrassCubic(0, 2)
    P = find_order_n_point(c, 3)
    assert P.x.contains(0)
    assert torsion_residual(c, 3, P.x.lo, P.x.hi, P.x.precision_bits) < 1e-20


def _float_add(a, P, Q):
    (x1, y1), (x2, y2) = P, Q
    lam = (3 * x1 * x1 + a) / (2 * y1) if P == Q else (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return x3, lam * (x1 - x3) - y1


def test_order_six_point_against_float_multiples():
    c = WeierstrassCubic(-1, 1)
    P = find_order_n_point(c, 6)
    with mpmath.workdps(60):
        x = mpmath.mpf(P.x.mid())
        base = (x, mpmath.sqrt(x ** 3 - x + 1))
        pts = [base]
        for _ in range(4):
            pts.append(_float_add(-1, pts[-1], base))
        x5, y5 = pts[-1]
        assert abs(x5 - base[0]) < 1e-25 and abs(y5 + base[1]) < 1e-25
        # proper divisors of 6 do not kill P
        for k in (1, 2):
            xk, yk = pts[k - 1]
            x_other, y_other = pts[5 - k - 1]
            assert abs(xk - x_other) > 1e-3 or abs(yk + y_other) > 1e-3


def test_torsion_rejects_singular_curves():
    with pytest.raises(ValueError):
        find_order_n_point(WeierstrassCubic(-3, 2), 5)


def test_coset_lines_follow_the_collinearity_rule():
    n = 7
    A = gen_coset_dual_arrangement(WeierstrassCubic(-1, 1), n)
    assert A.n == n
    with mpmath.workdps(40):
        rows = [[mpmath.mpf(v.mid()) if hasattr(v, "mid") else mpmath.mpf(Fraction(v).numerator) /
                 Fraction(v).denominator for v in L.coords] for L in A.lines]
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    d = abs(mpmath.det(mpmath.matrix([rows[i], rows[j], rows[k]])))
                    if (i + j + k) % n == 0:
                        assert d < 1e-20
                    else:
                        assert d > 1e-6


def test_coset_offset_does_not_change_lines():
    c = WeierstrassCubic(-1, 1)
    a = gen_coset_dual_arrangement(c, 5, 0)
    b = gen_coset_dual_arrangement(c, 5, 3)
    assert [L.coords[0].mid() for L in a.lines[1:]] == [L.coords[0].mid() for L in b.lines[1:]]


def test_tangency_counts_only_dual_points_on_the_cubic():
    c = WeierstrassCubic(-1, 1)
    A = gen_coset_dual_arrangement(c, 12)
    assert count_tangent_lines(A, c) == 12
    rng = random.Random(3)
    extra = [ProjLine(*(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(2)), 1)
             for _ in range(2)]
    report = tangency_report(A.extended(extra), c)
    assert report == {"n": 14, "k": 12, "undecided": 0, "bound_holds": True}


def test_prop_bound():
    assert prop_bound_holds(12, 12)
    assert prop_bound_holds(0, 0)
    # 7 * 100 = 700 < 8 * 100 - 21
    assert not prop_bound_holds(100, 100)
    for n in range(1, 80):
        holds = [k for k in range(n + 1) if prop_bound_holds(n, k)]
        assert holds == list(range(len(holds)))
        assert all(7 * n >= 8 * k - 21 for k in holds)
    with pytest.raises(ValueError):
        prop_bound_holds(3, 4)


def test_conic_examples():
    pts = [ProjPoint(x, y, 1) for x, y in ((2, 0), (-2, 0), (0, 1), (0, -1), (Fraction(6, 5), Fraction(4, 5)))]
    coeffs, cls = conic_through_five(pts)
    assert cls is ConicClass.ELLIPSE
    # x^2 + 4y^2 - 4 up to scale
    a, b, c_, d, e, f = coeffs
    assert (b, d, e) == (0, 0, 0) and c_ == 4 * a and f == -4 * a


def test_line_pair_is_degenerate():
    pts = [ProjPoint(x, y, 1) for x, y in ((0, 0), (1, 0), (2, 0), (0, 1), (0, 2))]
    assert conic_through_five(pts)[1] is ConicClass.DEGENERATE


def test_four_collinear_points_are_rank_deficient():
    pts = [ProjPoint(x, 0, 1) for x in range(4)] + [ProjPoint(0, 1, 1)]
    with pytest.raises(RankDeficient):
        conic_through_five(pts)


def _affine(rng):
    while True:
        p, q, r, s = (Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(4))
        if p * s - q * r:
            e, f = Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))
            return lambda x, y: (p * x + q * y + e, r * x + s * y + f)


def _params(rng):
    out = set()
    while len(out) < 5:
        t = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        if t:
            out.add(t)
    return sorted(out)


CURVES = {
    ConicClass.ELLIPSE: lambda t: ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)),
    ConicClass.HYPERBOLA: lambda t: (t, 1 / t),
    ConicClass.PARABOLA: lambda t: (t, t * t),
}


@pytest.mark.parametrize("expected", list(CURVES))
def test_affine_images_keep_their_class(expected):
    rng = random.Random(len(expected.value))
    for _ in range(150):
        f = _affine(rng)
        pts = [ProjPoint(*f(*CURVES[expected](t)), 1) for t in _params(rng)]
        assert conic_through_five(pts)[1] is expected


@pytest.mark.parametrize("m", range(5, 11))
def test_regular_polygon_alignment(m):
    assert verify_regular_alignment_conditions(m)


def test_perturbed_hexagon_fails_alignment():
    assert not verify_perturbed_hexagon()


def test_points_equal_is_a_sign():
    P = point(-2, 3)
    assert points_equal(P, point(-2, 3)) is Sign.ZERO
    assert points_equal(P, point(-1, 4)) is Sign.POSITIVE
    assert points_equal(INFINITY, P) is Sign.POSITIVE
