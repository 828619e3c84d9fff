"""Randomized property suites at small sizes, plus generator sanity."""

import pytest

from primecx.complexes import is_prime_subcomplex, prime_avoidance, validate_complex, validate_subcomplex
from primecx.modules import Verdict
from primecx.randgen import (
    random_avoidance_family, random_complex, random_complex_with_proper, random_subcomplex, trial_rng,
)
from primecx.suites import SUITES, run_audit

GREEN = [name for name in SUITES if name != "prime-avoidance"]


@pytest.mark.parametrize("name", GREEN)
def test_suite_small(name):
    res = SUITES[name](60, 11)
    assert res.trials == 60
    assert res.ok, res.failures[:2]


def test_generators_are_valid():
    for t in range(40):
        rng = trial_rng("generators", 0, t)
        cx = random_complex(rng)
        assert validate_complex(cx) is None
        assert validate_subcomplex(random_subcomplex(rng, cx)) is None


def test_generators_are_seeded():
    a = random_complex(trial_rng("x", 5, 2))
    b = random_complex(trial_rng("x", 5, 2))
    assert a == b


def test_avoidance_families_meet_inside():
    """Constructive families always satisfy the intersection hypothesis and the per-index conclusion."""
    checked = 0
    for t in range(200):
        rng = trial_rng("family", 0, t)
        cx, s = random_complex_with_proper(rng)
        if is_prime_subcomplex(s).verdict != Verdict.PRIME:
            continue
        ts = random_avoidance_family(rng, cx, s, rng.randint(1, 4))
        res = prime_avoidance(ts, s)
        assert res.status in ("holds", "theoremViolation")
        assert set(res.per_index) == set(s.proper)
        checked += 1
    assert checked > 20


def test_run_audit_order():
    names = ["torsion", "purity"]
    assert [r.name for r in run_audit(3, 0, names)] == names
