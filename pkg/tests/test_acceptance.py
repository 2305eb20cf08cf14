"""Acceptance criteria, one test each; every test logs a PASS/FAIL line.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest.
"""

import subprocess
import sys
import time

import pytest

from simparr.cubics import WeierstrassCubic
from simparr.scalar import precision_cap
from simparr.verify import DEFAULT_CUBIC, corpus_structure, run_suite


def _run(name, params=None, seed=0):
    start = time.perf_counter()
    report = run_suite(name, params, seed)
    return report, time.perf_counter() - start


def _summary(report, elapsed=None):
    text = f"{report['cases']} cases, {len(report['failures'])} failures"
    return text + (f", {elapsed:.1f} s" if elapsed is not None else "")


def test_gauss_bonnet_on_corpus(criterion_log):
    corpus_structure.cache_clear()
    report, elapsed = _run("gauss-bonnet")
    ok = not report["failures"] and report["cases"] == 19 + 10 + 5 and elapsed < 10
    criterion_log("gauss-bonnet identity on the corpus", ok, _summary(report, elapsed))
    assert ok, report["failures"]


def test_tangent_polygon_face_counts(criterion_log):
    report, _ = _run("tangent-polygon", {"m": list(range(3, 11))})
    ok = not report["failures"] and report["cases"] == 8
    criterion_log("tangent m-gon face counts, m=3..10", ok, _summary(report))
    assert ok, report["failures"]


def test_star_suite(criterion_log):
    report, _ = _run("stars")
    ok = not report["failures"] and report["cases"] > 0
    criterion_log("star exterior counts on non-R0 corpus", ok, _summary(report))
    assert ok, report["failures"][:5]


def test_adjacent_double_points_iff_near_pencil(criterion_log):
    report, _ = _run("adjacent-double")
    ok = not report["failures"]
    criterion_log("adjacent double points iff R0", ok, _summary(report))
    assert ok, report["failures"]


def test_cpinter_random_suite(criterion_log):
    report, elapsed = _run("cpinter", {"count": [10_000]}, seed=0)
    ok = not report["failures"] and report["cases"] == 10_000 and elapsed < 60
    criterion_log("CPInter triangulations need |G| >= |F| - 1", ok,
                  _summary(report, elapsed) + f", {report['triangulating']} triangulating")
    assert ok, report["failures"][:5]


def test_alignment_exhaustive(criterion_log):
    start = time.perf_counter()
    with precision_cap(1024):
        report = run_suite("alignment", {"m": list(range(8, 41))})
    elapsed = time.perf_counter() - start
    undecided = sum(1 for f in report["failures"] if f["undecided"])
    ok = not report["failures"] and elapsed < 120
    criterion_log("alignment triples non-collinear, m=8..40", ok,
                  _summary(report, elapsed) + f", {undecided} undecided")
    assert ok, report["failures"][:5]


def test_forbidden_configuration_scan(criterion_log):
    report, _ = _run("forbidden", {"m": list(range(4, 11))})
    ok = not report["failures"]
    by_m = {}
    for f in report["failures"]:
        by_m[f["m"]] = by_m.get(f["m"], 0) + 1
    criterion_log("no forbidden five-point configuration, m=4..10", ok,
                  _summary(report) + (f", hits per m {by_m}" if by_m else ""))
    assert ok, report["failures"][:5]


def test_crossed_quadrilateral_counts(criterion_log):
    report, _ = _run("quadrilaterals", {"m": list(range(5, 13))})
    ok = not report["failures"] and report["cases"] == 4 + 4 * 2
    criterion_log("crossed quadrilateral counts, m=5..12", ok, _summary(report))
    assert ok, report["failures"]


@pytest.mark.parametrize("n", [24, 30, 36])
def test_coset_arrangements_are_not_simplicial(n, criterion_log):
    start = time.perf_counter()
    report = run_suite("coset-nonsimplicial", {"n": [n]}, 0, DEFAULT_CUBIC)
    elapsed = time.perf_counter() - start
    detail = report["details"][0] if report.get("details") else {}
    ok = not report["failures"] and detail.get("faces_with_4_or_more_edges", 0) >= 1 and elapsed < 60
    c = WeierstrassCubic(*DEFAULT_CUBIC)
    criterion_log(f"coset dual arrangement n={n} is non-simplicial", ok,
                  f"cubic a={c.a} b={c.b}, {detail.get('faces_with_4_or_more_edges')} big faces, "
                  f"{detail.get('k')} tangent lines, {elapsed:.1f} s")
    assert ok, report["failures"]


def test_group_law(criterion_log):
    report, _ = _run("group-law", {"samples": [1000]}, seed=0)
    ok = not report["failures"] and report["cases"] >= 2000
    criterion_log("group law identity, inverse, 2-torsion, associativity", ok, _summary(report))
    assert ok, report["failures"][:5]


def test_conics_and_alignment_conditions(criterion_log):
    report, _ = _run("conic", {"m": list(range(5, 11))})
    ok = not report["failures"] and report["cases"] == 2 + 6 + 1
    criterion_log("conic classes and polygon alignment conditions", ok, _summary(report))
    assert ok, report["failures"]


def test_verify_all_is_deterministic(tmp_path, criterion_log):
    outputs = []
    for run in range(2):
        path = tmp_path / f"run{run}.json"
        subprocess.run([sys.executable, "-m", "simparr.cli", "verify", "all", "--seed", "5",
                        "-o", str(path)], capture_output=True, check=False)
        outputs.append(path.read_bytes() if path.exists() else None)
    ok = outputs[0] is not None and outputs[0] == outputs[1]
    criterion_log("verify all is byte-identical across runs", ok,
                  f"{len(outputs[0] or b'')} bytes")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
