"""Čech complexes of Z for pairwise coprime integers and their diagonal subcomplexes."""

import itertools
import random
from fractions import Fraction

import pytest

from primecx.cech import (
    CechComplex, IdealPart, LocFreeMap, LocFreeModule, build_cech, cech_subcomplex, check_dsquared,
    colon_over_z, is_primary_cech_subcomplex, is_prime_cech_subcomplex, reproduce_three_element_example,
    validate_cech_subcomplex,
)
from primecx.errors import ClosureViolation, NotCoprime, TooManyElements
from primecx.modules import Verdict
from primecx.oracle import SearchBox, brute_cech_colon, brute_cech_part
from primecx.ring import Ideal


@pytest.fixture(scope="module")
def c357():
    return build_cech([3, 5, 7])


class TestBuild:
    def test_components(self, c357):
        assert [c.summands for c in c357.components] == [(1,), (3, 5, 7), (15, 21, 35), (105,)]

    def test_single_element(self):
        cx = build_cech([2])
        assert [c.summands for c in cx.components] == [(1,), (2,)]
        assert cx.diffs[0].entries == ((1,),)

    def test_d1_d0_cancels(self, c357):
        image = c357.diffs[1](c357.diffs[0]([Fraction(1)]))
        assert list(image) == [0, 0, 0]

    @pytest.mark.parametrize("elements", [[2, 3], [2, 3, 5, 7], [3, 5, 7, 11, 13], [4, 9, 25]])
    def test_ranks_and_dsquared(self, elements):
        cx = build_cech(elements)
        assert check_dsquared(cx) is None
        assert sum(c.dim for c in cx.components) == 2 ** len(elements)

    def test_errors(self):
        with pytest.raises(NotCoprime):
            build_cech([6, 10])
        with pytest.raises(NotCoprime):
            build_cech([1, 3])
        with pytest.raises(TooManyElements):
            build_cech([2, 3, 5, 7, 11, 13, 17])

    def test_flipped_sign_is_caught(self, c357):
        d1 = c357.diffs[1]
        rows = [list(r) for r in d1.entries]
        rows[0][0] = -rows[0][0]
        bad = LocFreeMap(d1.source, d1.target, tuple(tuple(r) for r in rows))
        broken = CechComplex(c357.elements, c357.subsets, c357.components,
                             (c357.diffs[0], bad, c357.diffs[2]))
        assert check_dsquared(broken) is not None

    def test_incompatible_map_rejected(self):
        with pytest.raises(ValueError):
            LocFreeMap(LocFreeModule((3,)), LocFreeModule((5,)), ((Fraction(1),),))


class TestColon:
    def test_examples(self, c357):
        comp = c357.component(1)
        assert colon_over_z(IdealPart((2, 1, 1)), comp) == Ideal(2)
        assert colon_over_z(IdealPart((1, 1, 1)), comp) == Ideal(1)
        assert colon_over_z(IdealPart((0, 1, 1)), comp) == Ideal(0)

    def test_bounded_search_agrees(self, c357):
        rng = random.Random(0)
        comp = c357.component(1)
        for _ in range(40):
            part = IdealPart.canonical([rng.randint(0, 12) for _ in range(3)], comp)
            if colon_over_z(part, comp).gen > 50:
                continue  # beyond the search range
            assert colon_over_z(part, comp) == brute_cech_colon(part, comp, SearchBox(50, 1, 5))


class TestDeciders:
    def test_prime(self, c357):
        rep = is_prime_cech_subcomplex(cech_subcomplex(c357, {0: [0], 1: [2, 1, 1]}))
        assert rep.verdict == Verdict.PRIME and rep.ideals[1] == Ideal(2)

    def test_square_is_primary_not_prime(self, c357):
        sub = cech_subcomplex(c357, {0: [0], 1: [4, 1, 1]})
        assert is_primary_cech_subcomplex(sub).verdict == Verdict.PRIMARY
        rep = is_prime_cech_subcomplex(sub)
        assert rep.verdict == Verdict.NOT_PRIME
        assert (rep.witness.r, rep.witness.m) == (2, (2, 0, 0))
        assert rep.witness.replay(sub)

    def test_mixed_primes_not_primary(self, c357):
        sub = cech_subcomplex(c357, {0: [0], 1: [10, 1, 1]})
        rep = is_primary_cech_subcomplex(sub)
        assert rep.verdict == Verdict.NOT_PRIMARY
        assert (rep.witness.r, rep.witness.m) == (2, (5, 0, 0))
        assert rep.witness.replay(sub, primary=True)

    def test_inverted_prime_strips(self, c357):
        # 6 in Z[1/3] generates the same ideal as 2
        sub = cech_subcomplex(c357, {0: [0], 1: [6, 1, 1]})
        assert sub.part(1).gens == (2, 1, 1)

    def test_closure(self, c357):
        with pytest.raises(ClosureViolation):
            cech_subcomplex(c357, {1: [2, 1, 1]})
        loose = cech_subcomplex(c357, {1: [2, 1, 1]}, check=False)
        assert validate_cech_subcomplex(loose) == (0, 0)

    def test_full_is_not_proper(self, c357):
        assert is_prime_cech_subcomplex(cech_subcomplex(c357, {})).verdict == Verdict.NOT_PROPER

    def test_agrees_with_oracle_on_sample(self, c357):
        rng = random.Random(1)
        box = SearchBox(12, 12, 1)
        for k, count in ((1, 30), (2, 15)):
            comp = c357.component(k)
            for _ in range(count):
                gens = [rng.randint(0, 12) for _ in range(3)]
                sub = cech_subcomplex(c357, {k: gens}, check=False)
                if not sub.part(k).is_full():
                    brute = brute_cech_part(sub.part(k), comp, box)
                    ours = is_prime_cech_subcomplex(sub).per_index[k] == Verdict.PRIME
                    assert ours == brute.holds, (k, gens)
                    brute = brute_cech_part(sub.part(k), comp, box, radical=True)
                    ours = is_primary_cech_subcomplex(sub).per_index[k] == Verdict.PRIMARY
                    assert ours == brute.holds, (k, gens)


class TestReproduction:
    def test_passes(self):
        rep = reproduce_three_element_example()
        assert rep.components_ok and rep.differentials_ok and rep.dsquared_ok
        assert rep.prime_report.verdict == Verdict.PRIME
        assert rep.primary_report.verdict == Verdict.PRIMARY
        assert rep.primary_as_prime.verdict == Verdict.NOT_PRIME
        assert rep.literal_report.per_index[1] == Verdict.NOT_PROPER
        assert any("unit" in n for n in rep.literal_report.notes)
        assert rep.passed and rep.to_doc()["passed"]

    def test_other_prime(self):
        assert reproduce_three_element_example(q=11).passed
