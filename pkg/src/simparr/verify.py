"""Named verification suites.  Each returns ``{"suite", "cases", "failures"}``
where ``cases`` counts individual checks and every failure is a JSON record.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .arrangement import (analysis_report, build_incidence, classify_family, double_point_stats,
                          edges_between, gauss_bonnet_check, is_simplicial, star)
from .conics import (ConicClass, conic_through_five, verify_perturbed_hexagon,
                     verify_regular_alignment_conditions)
from .cubics import (INFINITY, WeierstrassCubic, add, gen_coset_dual_arrangement, neg, point,
                     points_equal, scalar_mul, tangency_report)
from .exceptions import UndecidedError
from .families import (alignment_cases, alignment_signs, count_crossed_quadrilaterals,
                       cpinter_suite, expected_crossed_quadrilaterals, forbidden_configuration_scan,
                       gen_family, gen_tangent, tangent_polygon_report)
from .projective import ProjPoint
from .scalar import Sign

DEFAULT_CUBIC = (Fraction(-1), Fraction(1))


# -- parameters -----------------------------------------------------------------------------


def parse_values(text: str) -> list:
    """'3..10' -> [3, ..., 10]; '24,30' -> [24, 30]; '7' -> [7]."""
    out = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif re.fullmatch(r"-?\d+", part):
            out.append(int(part))
        else:
            raise ValueError(f"cannot read {part!r} as integers")
    return out


def parse_params(items) -> dict:
    """Turn ['m=3..10', 'count=100'] into {'m': [...], 'count': [100]}."""
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ValueError(f"parameter {item!r} is not of the form name=values")
        params[key.strip()] = parse_values(value)
    return params


def _single(params: dict, key: str, default: int) -> int:
    values = params.get(key, [default])
    if len(values) != 1:
        raise ValueError(f"parameter {key} takes a single value")
    return values[0]


# -- corpus -----------------------------------------------------------------------------------

CORPUS_RANGES = {"R0": range(2, 21), "R1": range(3, 13), "R2": range(4, 13, 2)}


def corpus_members(params: dict) -> list:
    """(family, size) pairs; ``m`` restricts all three ranges, r0/r1/r2 set one each."""
    common = params.get("m")
    out = []
    for fam, default in CORPUS_RANGES.items():
        sizes = params.get(fam.lower(), common if common is not None else list(default))
        for size in sizes:
            if fam == "R0" and size >= 2 or fam == "R1" and size >= 3 or \
                    fam == "R2" and size >= 4 and size % 2 == 0:
                out.append((fam, size))
    return out


@lru_cache(maxsize=None)
def corpus_structure(family: str, size: int):
    return build_incidence(gen_family(family, size))


def _name(family: str, size: int) -> str:
    return f"{family}({size})"


# -- suites -----------------------------------------------------------------------------------


def suite_gauss_bonnet(params: dict, seed: int) -> dict:
    failures, cases = [], 0
    for fam, size in corpus_members(params):
        S = corpus_structure(fam, size)
        cases += 1
        value = gauss_bonnet_check(S)
        if not is_simplicial(S) or value != -3:
            failures.append({"arrangement": _name(fam, size), "simplicial": is_simplicial(S),
                             "gauss_bonnet": value})
    return {"cases": cases, "failures": failures}


def suite_tangent_polygon(params: dict, seed: int) -> dict:
    failures, cases = [], 0
    for m in params.get("m", list(range(3, 11))):
        cases += 1
        report = tangent_polygon_report(build_incidence(gen_tangent(m)), m)
        expected = {"m": m, "central": 1, "triangles": m, "quadrilaterals": m * (m - 3) // 2,
                    "other": 0, "all_double": True}
        if report != expected:
            failures.append({"m": m, "found": report, "expected": expected})
    return {"cases": cases, "failures": failures}


def suite_stars(params: dict, seed: int) -> dict:
    failures, cases = [], 0
    for fam, size in corpus_members(params):
        if fam == "R0":
            continue
        S = corpus_structure(fam, size)
        for v in range(S.V):
            cases += 1
            problems = star(S, v).violations()
            if problems:
                failures.append({"arrangement": _name(fam, size), "vertex": v, "problems": problems})
    return {"cases": cases, "failures": failures}


def suite_adjacent_double(params: dict, seed: int) -> dict:
    """Adjacent double points exactly in the near-pencils; one edge per adjacent pair otherwise."""
    failures, cases = [], 0
    for fam, size in corpus_members(params):
        S = corpus_structure(fam, size)
        _, adjacent = double_point_stats(S)
        is_r0 = classify_family(S).family == "R0"
        cases += 1
        if adjacent != is_r0:
            failures.append({"arrangement": _name(fam, size), "adjacent_double_pair": adjacent,
                             "family": str(classify_family(S))})
        if not is_r0:
            cases += 1
            multiple = sorted(sorted(pair) for pair, c in edges_between(S).items() if c != 1)
            if multiple:
                failures.append({"arrangement": _name(fam, size), "multiply_joined": multiple})
    return {"cases": cases, "failures": failures}


def suite_cpinter(params: dict, seed: int) -> dict:
    count = _single(params, "count", 10_000)
    result = cpinter_suite(count, seed)
    failures = [dict(v) for v in result["violations"]]
    return {"cases": result["instances"], "triangulating": result["triangulating"],
            "failures": failures}


def suite_alignment(params: dict, seed: int) -> dict:
    failures, cases = [], 0
    for m in params.get("m", list(range(8, 41))):
        for j, l in alignment_cases(m):
            cases += 1
            signs = alignment_signs(m, j, l)
            if any(not s.nonzero for s in signs):
                failures.append({"m": m, "j": j, "l": l, "signs": [s.name for s in signs],
                                 "undecided": any(s is Sign.UNDECIDED for s in signs)})
    return {"cases": cases, "failures": failures}


def suite_forbidden(params: dict, seed: int) -> dict:
    failures, cases = [], 0
    for m in params.get("m", list(range(4, 11))):
        cases += 1
        failures.extend(forbidden_configuration_scan(m))
    return {"cases": cases, "failures": failures}


def suite_quadrilaterals(params: dict, seed: int) -> dict:
    failures, cases = [], 0
    for m in params.get("m", list(range(5, 13))):
        kinds = ("odd_m",) if m % 2 else ("through_corners", "through_triangle_interiors")
        for kind in kinds:
            cases += 1
            found, expected = count_crossed_quadrilaterals(m, kind), expected_crossed_quadrilaterals(m, kind)
            if found != expected:
                failures.append({"m": m, "kind": kind, "found": found, "expected": expected})
    return {"cases": cases, "failures": failures}


def suite_coset_nonsimplicial(params: dict, seed: int, cubic=DEFAULT_CUBIC) -> dict:
    c = WeierstrassCubic(*cubic)
    failures, cases, details = [], 0, []
    for n in params.get("n", [24, 30, 36]):
        cases += 1
        A = gen_coset_dual_arrangement(c, n)
        S = build_incidence(A)
        tangency = tangency_report(A, c)
        big = sum(1 for f in S.faces if f.size >= 4)
        details.append({"n": n, "faces_with_4_or_more_edges": big, **{k: tangency[k] for k in ("k", "undecided", "bound_holds")}})
        if is_simplicial(S) or tangency["k"] != n:
            failures.append({"n": n, "simplicial": is_simplicial(S), "tangent_lines": tangency["k"]})
    return {"cases": cases, "details": details, "failures": failures}


_CURVE17 = WeierstrassCubic(0, 17)
_GENERATORS17 = (point(-2, 3), point(-1, 4))


def _point_pool() -> list:
    P, Q = _GENERATORS17
    pool = []
    for a in range(-2, 3):
        for b in range(-2, 3):
            pool.append(add(_CURVE17, scalar_mul(_CURVE17, a, P), scalar_mul(_CURVE17, b, Q)))
    return pool


def suite_group_law(params: dict, seed: int) -> dict:
    """Identity, inverse, commutativity and associativity with exact rational points."""
    samples = _single(params, "samples", 1000)
    rng = random.Random(seed)
    c = _CURVE17
    pool = _point_pool()
    failures, cases = [], 0

    def check(ok: bool, record: dict):
        nonlocal cases
        cases += 1
        if not ok:
            failures.append(record)

    for i, P in enumerate(pool):
        check(points_equal(add(c, P, INFINITY), P) is Sign.ZERO, {"law": "identity", "point": i})
        check(add(c, P, neg(c, P)).is_infinity, {"law": "inverse", "point": i})
    c2 = WeierstrassCubic(-1, 0)
    check(scalar_mul(c2, 2, point(0, 0)).is_infinity, {"law": "two-torsion"})
    for t in range(samples):
        i, j, k = (rng.randrange(len(pool)) for _ in range(3))
        P, Q, R = pool[i], pool[j], pool[k]
        check(points_equal(add(c, add(c, P, Q), R), add(c, P, add(c, Q, R))) is Sign.ZERO,
              {"law": "associativity", "triple": [i, j, k]})
        check(points_equal(add(c, P, Q), add(c, Q, P)) is Sign.ZERO, {"law": "commutativity", "pair": [i, j]})
    return {"cases": cases, "failures": failures}


ELLIPSE_POINTS = ((2, 0), (-2, 0), (0, 1), (0, -1), (Fraction(6, 5), Fraction(4, 5)))
HYPERBOLA_POINTS = ((1, 1), (2, Fraction(1, 2)), (-1, -1), (3, Fraction(1, 3)), (-2, Fraction(-1, 2)))


def suite_conic(params: dict, seed: int) -> dict:
    failures, cases = [], 0
    for name, pts, expected in (("ellipse", ELLIPSE_POINTS, ConicClass.ELLIPSE),
                                ("hyperbola", HYPERBOLA_POINTS, ConicClass.HYPERBOLA)):
        cases += 1
        _, cls = conic_through_five([ProjPoint(x, y, 1) for x, y in pts])
        if cls is not expected:
            failures.append({"case": name, "found": cls.value, "expected": expected.value})
    for m in params.get("m", list(range(5, 11))):
        cases += 1
        if not verify_regular_alignment_conditions(m):
            failures.append({"case": "regular", "m": m})
    cases += 1
    if verify_perturbed_hexagon():
        failures.append({"case": "perturbed hexagon", "expected": False})
    return {"cases": cases, "failures": failures}


SUITES: dict[str, Callable] = {
    "gauss-bonnet": suite_gauss_bonnet,
    "tangent-polygon": suite_tangent_polygon,
    "stars": suite_stars,
    "adjacent-double": suite_adjacent_double,
    "cpinter": suite_cpinter,
    "alignment": suite_alignment,
    "forbidden": suite_forbidden,
    "quadrilaterals": suite_quadrilaterals,
    "coset-nonsimplicial": suite_coset_nonsimplicial,
    "group-law": suite_group_law,
    "conic": suite_conic,
}


def run_suite(name: str, params: Optional[dict] = None, seed: int = 0, cubic=None) -> dict:
    """Run one suite; UndecidedError is reported as a failure with ``undecided`` set."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    params = params or {}
    fn = SUITES[name]
    try:
        if name == "coset-nonsimplicial" and cubic is not None:
            body = fn(params, seed, cubic)
        else:
            body = fn(params, seed)
    except UndecidedError as exc:
        body = {"cases": 0, "failures": [{"undecided": True, "error": str(exc)}]}
    return {"suite": name, **body}


def report_undecided(report: dict) -> bool:
    return any(isinstance(f, dict) and f.get("undecided") for f in report["failures"])


def run_all(seed: int = 0) -> list:
    """Every suite at its default range, in registry order."""
    return [run_suite(name, seed=seed) for name in SUITES]


def corpus_reports(params: Optional[dict] = None) -> list:
    return [{"arrangement": _name(f, s), **analysis_report(corpus_structure(f, s))}
            for f, s in corpus_members(params or {})]
