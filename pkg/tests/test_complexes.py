"""Complex-level operations on small hand-built complexes over Z and Z[1/u]."""

from fractions import Fraction

import pytest

from primecx.complexes import (
    Complex, Subcomplex, annihilator_of_complex, construct_free_prime, is_maximal_subcomplex,
    is_primary_subcomplex, is_prime_subcomplex, is_pure_subcomplex, localize_complex, prime_avoidance,
    proper_indices, residual, saturate_subcomplex, scale_by_ideal, tensor_complex_with_free,
    torsion_subcomplex, validate_complex, validate_subcomplex, zero_divisors_of_complex,
)
from primecx.equivalence import EXACT, SAMPLED, audited_report, equivalence_audit
from primecx.errors import ClosureViolation, NotFree, PNotPrime, ValidationError
from primecx.modules import FgModule, ModuleMap, Submodule, Verdict
from primecx.ring import Ideal, RingCtx

Z = RingCtx(1)
ZZ = FgModule(Z, (), 1)


def mult(dom, cod, r):
    return ModuleMap(dom, cod, [[Fraction(r)]])


def times(r):
    """0 -> Z --r--> Z -> 0 on degrees 1, 0."""
    return Complex(Z, 0, [ZZ, ZZ], [mult(ZZ, ZZ, r)])


def multiples(module, *gens):
    return Submodule.span(module, [module.elem([g]) for g in gens])


def sub_of(cx, *gens_top_first):
    """Subcomplex of a two-term Z complex written (S_1, S_0) with None for the whole component."""
    parts = []
    for g, m in zip(reversed(gens_top_first), cx.modules):
        parts.append(m.full() if g is None else multiples(m, g))
    return Subcomplex(cx, parts)


def concentrated(*modules):
    """Complex with the given components and zero differentials, degrees 0.."""
    diffs = [ModuleMap(modules[k + 1], modules[k], [[0] * modules[k + 1].dim for _ in range(modules[k].dim)])
             for k in range(len(modules) - 1)]
    return Complex(modules[0].ctx, 0, list(modules), diffs)


class TestValidation:
    def test_single_map(self):
        assert validate_complex(times(2)) is None

    def test_bad_composite(self):
        cx = Complex(Z, 0, [ZZ, ZZ, ZZ], [mult(ZZ, ZZ, 3), mult(ZZ, ZZ, 2)], check=False)
        assert validate_complex(cx) == 1
        with pytest.raises(ValidationError):
            Complex(Z, 0, [ZZ, ZZ, ZZ], [mult(ZZ, ZZ, 3), mult(ZZ, ZZ, 2)])

    def test_torsion_composite_vanishes(self):
        z4 = FgModule(Z, (4,))
        cx = Complex(Z, 0, [z4, z4, ZZ], [mult(z4, z4, 2), mult(ZZ, z4, 2)])
        assert validate_complex(cx) is None

    def test_subcomplex_extremes(self):
        cx = times(2)
        assert validate_subcomplex(cx.full()) is None
        assert validate_subcomplex(cx.zero()) is None

    def test_subcomplex_violation(self):
        cx = times(1)
        bad = Subcomplex(cx, [multiples(ZZ, 2), ZZ.full()], check=False)
        index, gen = validate_subcomplex(bad)
        assert index == 1 and gen.coords == (1,)
        with pytest.raises(ClosureViolation):
            Subcomplex(cx, [multiples(ZZ, 2), ZZ.full()])


def test_proper_indices():
    cx = times(2)
    assert proper_indices(cx.full()) == []
    assert proper_indices(cx.zero()) == [0, 1]
    assert proper_indices(sub_of(cx, 2, None)) == [1]


class TestDeciders:
    def test_prime(self):
        rep = is_prime_subcomplex(sub_of(times(2), 2, None))
        assert rep.verdict == Verdict.PRIME and rep.ideals == {1: Ideal(2)}

    def test_not_prime_witness(self):
        sub = sub_of(times(2), 4, None)
        rep = is_prime_subcomplex(sub)
        assert rep.verdict == Verdict.NOT_PRIME
        w = rep.witness
        assert (w.index, w.r, w.m.coords) == (1, 2, (2,))
        assert w.replay(sub.part(1))

    def test_not_proper(self):
        assert is_prime_subcomplex(times(2).full()).verdict == Verdict.NOT_PROPER

    def test_primary(self):
        rep = is_primary_subcomplex(sub_of(times(2), 4, None))
        assert rep.verdict == Verdict.PRIMARY and rep.ideals == {1: Ideal(2)}

    def test_not_primary_witness(self):
        sub = sub_of(times(2), 6, None)
        rep = is_primary_subcomplex(sub)
        w = rep.witness
        assert rep.verdict == Verdict.NOT_PRIMARY and (w.index, w.r, w.m.coords) == (1, 2, (3,))
        assert w.replay(sub.part(1), primary=True)

    def test_prime_implies_primary(self):
        assert is_primary_subcomplex(sub_of(times(2), 2, None)).verdict == Verdict.PRIMARY


class TestResidualAndAnnihilators:
    def test_residual_lcm(self):
        cx = concentrated(ZZ, ZZ)
        assert residual(sub_of(cx, 6, 4)) == Ideal(12)

    def test_residual_zero_and_whole(self):
        cx = concentrated(ZZ)
        assert residual(cx.zero()) == Ideal(0)
        assert residual(cx.full()) == Ideal(1)

    def test_zero_divisors_common_primes(self):
        z = zero_divisors_of_complex(concentrated(FgModule(Z, (12,)), FgModule(Z, (18,))))
        assert z.gens == (2, 3)

    def test_zero_divisors_disjoint_primes(self):
        # Z(Z/4) = (2) and Z(Z/9) = (3) meet in (6), not just {0}
        z = zero_divisors_of_complex(concentrated(FgModule(Z, (4,)), FgModule(Z, (9,))))
        assert z.gens == (6,)
        assert z.contains(0) and z.contains(12) and not z.contains(2)

    def test_zero_divisors_of_integers(self):
        z = zero_divisors_of_complex(concentrated(ZZ))
        assert z.gens == (0,) and z.contains(0) and not z.contains(5)

    def test_annihilator(self):
        assert annihilator_of_complex(concentrated(FgModule(Z, (4,)), FgModule(Z, (6,)))) == Ideal(12)
        assert annihilator_of_complex(concentrated(FgModule(Z, (4,)), ZZ)) == Ideal(0)
        assert annihilator_of_complex(concentrated(FgModule(Z))) == Ideal(1)


class TestTorsionPureMaximal:
    def test_torsion_of_free(self):
        assert torsion_subcomplex(times(2)) == times(2).zero()

    def test_torsion_of_torsion(self):
        cx = concentrated(FgModule(Z, (6,)))
        t = torsion_subcomplex(cx)
        assert t == cx.full() and is_prime_subcomplex(t).verdict == Verdict.NOT_PROPER

    def test_torsion_of_mixed(self):
        m = FgModule(Z, (6,), 1)
        t = torsion_subcomplex(concentrated(m))
        assert t.parts[0] == Submodule.span(m, [m.elem([1, 0])])
        assert is_prime_subcomplex(t).verdict == Verdict.PRIME

    def test_pure(self):
        assert not is_pure_subcomplex(sub_of(concentrated(ZZ), 2))
        m = FgModule(Z, (3,), 1)
        cx = concentrated(m)
        assert is_pure_subcomplex(Subcomplex(cx, [Submodule.span(m, [m.elem([1, 0])])]))
        assert is_pure_subcomplex(cx.full(), test_bound=10)

    def test_maximal(self):
        assert is_maximal_subcomplex(sub_of(times(2), 2, None))
        assert not is_maximal_subcomplex(sub_of(times(2), 4, None))
        assert not is_maximal_subcomplex(sub_of(times(2), 0, None))
        assert not is_maximal_subcomplex(times(2).full())


class TestConstructions:
    def test_scale(self):
        z6 = FgModule(Z, (6,))
        cx = concentrated(z6)
        part = scale_by_ideal(cx, Ideal(3)).parts[0]
        assert sorted(e.coords[0] for e in z6.elements() if part.contains(e)) == [0, 3]
        assert scale_by_ideal(cx, Ideal(1)) == cx.full()
        assert scale_by_ideal(cx, Ideal(0)) == cx.zero()

    def test_tensor(self):
        cx = times(2)
        sub = sub_of(cx, 2, None)
        one = tensor_complex_with_free(cx, sub, 1)
        assert one.complex == cx and one.subcomplex == sub
        two = tensor_complex_with_free(cx, sub, 2)
        z2 = two.complex.module(1)
        assert z2.free == 2
        assert two.subcomplex.part(1) == Submodule.span(z2, [z2.elem([2, 0]), z2.elem([0, 2])])
        assert two.subcomplex.part(0).is_full()
        three = tensor_complex_with_free(cx, cx.full(), 3)
        assert is_prime_subcomplex(three.subcomplex).verdict == Verdict.NOT_PROPER

    def test_localize(self):
        cx = times(2)
        sub = sub_of(cx, 2, None)
        five = localize_complex(cx, sub, 5)
        assert five.proper_flag and five.complex.ctx == RingCtx(5)
        assert is_prime_subcomplex(five.subcomplex).verdict == Verdict.PRIME
        two = localize_complex(cx, sub, 2)
        assert not two.proper_flag and not two.subcomplex.proper
        one = localize_complex(cx, sub, 1)
        assert one.complex == cx and one.subcomplex == sub

    def test_saturate(self):
        cx = times(2)
        res = saturate_subcomplex(sub_of(cx, 6, None), Ideal(2))
        assert not res.hypothesis_ok and res.violations == [1]
        assert res.subcomplex == sub_of(cx, 2, None)
        fixed = saturate_subcomplex(sub_of(cx, 2, None), Ideal(2))
        assert fixed.hypothesis_ok and fixed.subcomplex == sub_of(cx, 2, None)
        assert saturate_subcomplex(cx.zero(), Ideal(3)).subcomplex == cx.zero()
        with pytest.raises(PNotPrime):
            saturate_subcomplex(cx.zero(), Ideal(4))

    def test_free_prime(self):
        z2 = FgModule(Z, (), 2)
        d = ModuleMap(z2, z2, [[1, 0], [0, 0]])
        cx = Complex(Z, 0, [z2, z2], [d])
        s = construct_free_prime(cx, Ideal(3), {0: [0]})
        e = z2.basis()
        assert s.part(0) == Submodule.span(z2, [e[0], 3 * e[1]])
        assert s.part(1) == z2.full().scale(3)
        rep = is_prime_subcomplex(s)
        assert rep.verdict == Verdict.PRIME and set(rep.ideals.values()) == {Ideal(3)}
        everything = construct_free_prime(cx, Ideal(3), {0: [0, 1], 1: [0, 1]})
        assert is_prime_subcomplex(everything).verdict == Verdict.NOT_PROPER
        single = construct_free_prime(concentrated(ZZ), Ideal(2), {})
        assert single.parts[0] == multiples(ZZ, 2)

    def test_free_prime_errors(self):
        with pytest.raises(NotFree):
            construct_free_prime(concentrated(FgModule(Z, (2,))), Ideal(2), {})
        with pytest.raises(PNotPrime):
            construct_free_prime(concentrated(ZZ), Ideal(0), {})
        with pytest.raises(ClosureViolation):
            construct_free_prime(times(1), Ideal(2), {1: [0]})


class TestAudit:
    def test_prime_all_true(self):
        trace = equivalence_audit(sub_of(times(2), 2, None))
        assert all(trace[k] for k in EXACT + SAMPLED)

    def test_non_prime(self):
        trace = equivalence_audit(sub_of(times(2), 4, None))
        assert not any(trace[k] for k in EXACT)
        assert not trace["ideal_product"]

    def test_torsion_subcomplex_passes(self):
        m = FgModule(Z, (6,), 1)
        cx = Complex(Z, 0, [m, ZZ], [ModuleMap(ZZ, m, [[3], [2]])])
        rep = audited_report(torsion_subcomplex(cx))
        assert rep.verdict == Verdict.PRIME and all(rep.condition_trace.values())

    def test_requires_proper(self):
        with pytest.raises(ValueError):
            equivalence_audit(times(2).full())


class TestPrimeAvoidance:
    def test_holds_by_containment(self):
        cx = concentrated(ZZ)
        res = prime_avoidance([sub_of(cx, 4), sub_of(cx, 6)], sub_of(cx, 2))
        assert res.status == "holds" and res.index == 1

    def test_inclusion_failure(self):
        cx = concentrated(ZZ)
        res = prime_avoidance([sub_of(cx, 3), sub_of(cx, 5)], sub_of(cx, 2))
        assert res.status == "inclusionFailure" and res.witness.coords == (15,)

    def test_single(self):
        cx = concentrated(ZZ)
        s = sub_of(cx, 2)
        assert prime_avoidance([s], s).index == 1

    def test_not_prime(self):
        cx = concentrated(ZZ)
        assert prime_avoidance([sub_of(cx, 4)], sub_of(cx, 4)).status == "notPrime"

    def test_whole_complex_form_can_fail(self):
        """Two components with different primes: every T_i escapes S somewhere."""
        cx = concentrated(ZZ, ZZ)
        s = sub_of(cx, 2, 3)
        res = prime_avoidance([sub_of(cx, 2, None), sub_of(cx, None, 3)], s)
        assert res.status == "theoremViolation"
        assert res.per_index == {0: 2, 1: 1}
