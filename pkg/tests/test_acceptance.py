"""Acceptance gate: the seven release criteria at their stated sizes and tolerances.

Every criterion prints one PASS/FAIL line (collected in the terminal summary
under pytest, printed directly when run as a script).  The prime-avoidance
criterion is expected to fail: its whole-complex statement admits
counterexamples, which the suite finds and reports.
"""

import subprocess
import sys
import time

import pytest

from primecx.cech import reproduce_three_element_example
from primecx.suites import (
    equivalent_conditions_suite, faithfully_flat_suite, oracle_equivalence_suite, prime_avoidance_suite, SUITES,
)

RESULTS = []

PROPERTY_SUITES = (
    "direct-summand",
    "purity",
    "torsion",
    "primary-over-prime",
    "saturation",
    "maximal-colon",
    "maximal-subcomplex",
    "localization",
)


def report(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _suite_detail(res):
    return f"{res.name} {res.passed}/{res.trials} (applicable {res.applicable}, failures {len(res.failures)})"


@pytest.mark.acceptance
def test_oracle_equivalence():
    start = time.perf_counter()
    res = oracle_equivalence_suite(max_order=200, subs_per_module=20, seed=0)
    elapsed = time.perf_counter() - start
    ok = res.ok and res.trials >= 20 and elapsed <= 60
    assert report(1, ok, f"{_suite_detail(res)} in {elapsed:.1f}s (limit 60s)"), res.failures[:3]


@pytest.mark.acceptance
def test_equivalent_conditions():
    res = equivalent_conditions_suite(5000, seed=0)
    assert report(2, res.ok and res.applicable == 5000, _suite_detail(res)), res.failures[:3]


@pytest.mark.acceptance
def test_faithfully_flat():
    res = faithfully_flat_suite(2000, seed=0)
    assert report(3, res.ok and res.applicable == 2000, _suite_detail(res)), res.failures[:3]


@pytest.mark.acceptance
def test_prime_avoidance():
    res = prime_avoidance_suite(10000, seed=0)
    detail = _suite_detail(res)
    if res.failures:
        detail += "; first counterexample at trial %d" % res.failures[0]["trial"]
    assert report(4, res.ok, detail), res.failures[:2]


@pytest.mark.acceptance
def test_property_suites():
    results = [SUITES[name](1000, 0) for name in PROPERTY_SUITES]
    bad = [r for r in results if not r.ok]
    detail = "; ".join(_suite_detail(r) for r in results)
    assert report(5, not bad, detail), [(r.name, r.failures[:2]) for r in bad]


@pytest.mark.acceptance
def test_cech_reproduction():
    rep = reproduce_three_element_example()
    detail = (f"components {rep.components_ok}, differentials {rep.differentials_ok}, d^2 {rep.dsquared_ok}, "
              f"prime {rep.prime_report.verdict}, primary {rep.primary_report.verdict}/"
              f"{rep.primary_as_prime.verdict}, literal degree 1 {rep.literal_report.per_index.get(1)}")
    assert report(6, rep.passed, detail)


@pytest.mark.acceptance
def test_audit_determinism():
    cmd = [sys.executable, "-m", "primecx", "audit", "--seed", "7", "--format", "structured"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    same = first.stdout == second.stdout and first.returncode == second.returncode and bool(first.stdout)
    detail = f"{len(first.stdout)} bytes, exit codes {first.returncode}/{second.returncode}, identical {same}"
    assert report(7, same, detail)


if __name__ == "__main__":
    failed = 0
    for fn in (test_oracle_equivalence, test_equivalent_conditions, test_faithfully_flat, test_prime_avoidance,
               test_property_suites, test_cech_reproduction, test_audit_determinism):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
