"""The brute-force reference deciders on their own and against the fast path."""

from fractions import Fraction

import numpy as np
import pytest

from primecx.modules import FgModule, Submodule, associated_primes, colon, saturate, zero_divisors
from primecx.oracle import (
    SearchBox, brute_ass, brute_colon, brute_is_primary_submodule, brute_is_prime_submodule,
    brute_quotient_z, brute_saturate, brute_z,
)
from primecx.ring import Ideal, RingCtx
from primecx.suites import invariant_chains, oracle_equivalence_suite

Z = RingCtx(1)
ZZ = FgModule(Z, (), 1)


def multiples(module, g):
    return Submodule.span(module, [module.elem([g])])


def test_search_box_bounds():
    with pytest.raises(ValueError):
        SearchBox(0, 1, 0)
    with pytest.raises(ValueError):
        SearchBox(1, 1, -1)


class TestPrimeSweep:
    def test_four_z_counterexample(self):
        v = brute_is_prime_submodule(multiples(ZZ, 4), SearchBox(12, 12, 0))
        assert v.counterexample == (2, (2,)) and not v.holds

    def test_two_z_clean(self):
        assert brute_is_prime_submodule(multiples(ZZ, 2), SearchBox(12, 12, 0)).holds

    def test_zero_in_z6(self):
        z6 = FgModule(Z, (6,))
        v = brute_is_prime_submodule(z6.zero_submodule(), SearchBox(6, 6, 0))
        assert v.counterexample == (2, (3,)) and v.exhaustive

    def test_whole_is_not_proper(self):
        assert not brute_is_prime_submodule(ZZ.full()).proper

    def test_primary(self):
        assert brute_is_primary_submodule(multiples(ZZ, 4)).holds
        assert not brute_is_primary_submodule(multiples(ZZ, 6)).holds

    def test_localized_ring(self):
        ctx = RingCtx(2)
        m = FgModule(ctx, (), 1)
        v = brute_is_prime_submodule(Submodule.span(m, [m.elem([9])]), SearchBox(12, 4, 1))
        assert v.counterexample is not None and v.counterexample[0] == 3


class TestColonSweep:
    def test_examples(self):
        m = FgModule(Z, (2, 4))
        assert brute_colon(Submodule.span(m, [m.elem([0, 2])])) == Ideal(2)
        assert brute_colon(FgModule(Z, (12,), 1).zero_submodule()) == Ideal(0)
        assert brute_colon(ZZ.full()) == Ideal(1)


class TestZeroDivisorSweep:
    def test_z12(self):
        assert brute_z(FgModule(Z, (12,))) == {r for r in range(13) if r % 2 == 0 or r % 3 == 0}

    def test_zero_module(self):
        assert brute_z(FgModule(Z)) == set()

    def test_z5(self):
        assert brute_z(FgModule(Z, (5,)), SearchBox(20)) == {0, 5, 10, 15, 20}

    def test_prime_set_description(self):
        m = FgModule(Z, (2, 6))
        ps = zero_divisors(m)
        assert brute_z(m, SearchBox(30)) == {r for r in range(31) if ps.contains(r)}

    def test_quotient_and_ass(self):
        m = FgModule(Z, (4, 12))
        s = Submodule.span(m, [m.elem([2, 3])])
        q = s.quotient_info.module
        assert brute_ass(s) == list(associated_primes(q).primes)
        assert brute_quotient_z(s, SearchBox(24)) == {r for r in range(25) if zero_divisors(q).contains(r)}


class TestSaturateSweep:
    def test_six_at_two(self):
        assert brute_saturate(multiples(ZZ, 6), Ideal(2), SearchBox(99, 100)) == multiples(ZZ, 2)

    def test_mixed(self):
        m = FgModule(Z, (4,), 1)
        got = brute_saturate(m.zero_submodule(), Ideal(3), SearchBox(12, 6))
        assert got == Submodule.span(m, [m.elem([1, 0])])

    def test_whole(self):
        m = FgModule(Z, (6,))
        assert brute_saturate(m.full(), Ideal(2)) == m.full()

    def test_matches_fast_path_on_finite(self):
        m = FgModule(Z, (2, 12))
        s = Submodule.span(m, [m.elem([1, 4])])
        for p in (0, 2, 3, 5):
            assert brute_saturate(s, Ideal(p)) == saturate(s, Ideal(p))


def test_invariant_chains_are_chains():
    chains = invariant_chains(200)
    assert len(chains) == len(set(chains))
    for c in chains:
        assert all(b % a == 0 for a, b in zip(c, c[1:])) and all(d > 1 for d in c)
        assert int(np.prod(c)) <= 200


def test_small_oracle_sweep():
    res = oracle_equivalence_suite(max_order=40, subs_per_module=5, seed=3)
    assert res.trials > 0 and res.passed, res.failures[:3]
