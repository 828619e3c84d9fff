"""Independent predicates for the equivalent characterisations of primeness.

Each exact condition is evaluated through its own computational route so the
audit can detect disagreement between them; the quantified conditions are
probed on seeded random witnesses only.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .complexes import is_prime_subcomplex, subcomplex_from_generators
from .modules import (
    ZERO,
    FgModule,
    ModuleMap,
    Verdict,
    annihilator_of_element,
    associated_primes,
    colon,
    colon_by_element,
    is_prime_submodule,
    torsion_submodule,
    zero_divisors,
)
from .ring import Ideal, ideal_intersection, is_prime_ideal, prime_divisors

EXACT = (
    "prime",
    "torsion_free_quotient",
    "colon_by_scalar",
    "element_annihilator",
    "associated_primes",
    "zero_divisors",
    "cyclic_annihilator",
)
SAMPLED = (
    "ideal_product",
    "colon_by_ideal",
    "overmodule_colon",
    "product_avoidance",
)


def _quotient_test_elements(part):
    """Lifts of the quotient basis vectors and of an order-q element per prime q."""
    pres = part.quotient_info
    q = pres.module
    vecs = []
    for j in range(q.dim):
        e = [Fraction(int(k == j)) for k in range(q.dim)]
        vecs.append(e)
        if j < q.rank:
            d = q.invariants[j]
            for p in prime_divisors(d):
                vecs.append([Fraction(d // p) if k == j else ZERO for k in range(q.dim)])
    return [part.ambient.elem(pres.lift_vector(v)) for v in vecs]


def _scalar_probe_set(part, colon_ideal, extra=20):
    q = part.quotient_info.module
    primes = {p for d in q.invariants for p in prime_divisors(d)}
    if colon_ideal.gen:
        primes |= set(prime_divisors(colon_ideal.gen))
    out = sorted(primes) + list(range(1, extra + 1)) + [-r for r in range(1, extra + 1)]
    return [r for r in dict.fromkeys(out) if not colon_ideal.contains(r)]


def cond_prime(part):
    return is_prime_submodule(part).verdict == Verdict.PRIME


def cond_torsion_free_quotient(part):
    """M/S is a torsion-free module over R/(S:M)."""
    p = colon(part)
    qmod = part.quotient_info.module
    if p.gen == 0:
        return torsion_submodule(qmod).is_zero()
    if is_prime_ideal(p):
        return True  # a vector space over the residue field
    # R/P has zero divisors q (prime q | gen); each kills a non-zero element of M/S
    for q in prime_divisors(p.gen):
        if colon_by_element(part, q) != part:
            return False
    return True


def cond_colon_by_scalar(part, extra=20):
    """(S : r) = S for every r outside (S : M); exact via the critical primes."""
    p = colon(part)
    return all(colon_by_element(part, r) == part for r in _scalar_probe_set(part, p, extra))


def cond_element_annihilator(part):
    """(S : m) = (S : M) for every m outside S."""
    p = colon(part)
    for m in _quotient_test_elements(part):
        if part.contains(m):
            continue
        proj = part.quotient_info.project(m.coords)
        img = part.quotient_info.module.elem(proj)
        if annihilator_of_element(img) != p:
            return False
    return True


def cond_associated_primes(part):
    return associated_primes(part.quotient_info.module).ideals() == [colon(part)]


def cond_zero_divisors(part):
    return zero_divisors(part.quotient_info.module).equals_ideal(colon(part))


def cond_cyclic_annihilator(part):
    """Every non-zero cyclic submodule of M/S has annihilator (S : M).

    Evaluated as the kernel of R -> M/S, 1 |-> m + S, a route independent of
    the element-order formula.
    """
    p = colon(part)
    pres = part.quotient_info
    qmod = pres.module
    for m in _quotient_test_elements(part):
        if part.contains(m):
            continue
        y = pres.project(m.coords)
        # (S + Rm)/S is the image of R -> M/S, 1 |-> y; its annihilator is the kernel
        ring = FgModule(part.ambient.ctx, (), 1)
        ker = ModuleMap(ring, qmod, [[c] for c in y]).kernel()
        gens = [g.coords[0] for g in ker.generators()]
        ann = Ideal(part.ambient.ctx.strip(abs(int(gens[0])))) if gens else Ideal(0)
        if ann != p:
            return False
    return True


EXACT_PREDICATES = {
    "prime": cond_prime,
    "torsion_free_quotient": cond_torsion_free_quotient,
    "colon_by_scalar": cond_colon_by_scalar,
    "element_annihilator": cond_element_annihilator,
    "associated_primes": cond_associated_primes,
    "zero_divisors": cond_zero_divisors,
    "cyclic_annihilator": cond_cyclic_annihilator,
}


def _random_element(rng, module, bound=4):
    return module.elem([rng.randint(-bound, bound) for _ in range(module.dim)])


def _random_overcomplex(rng, sub):
    cx = sub.parent
    gens = {i: list(sub.part(i).generators()) for i in cx.indices}
    i = rng.choice(list(cx.indices))
    if cx.module(i).dim:
        gens[i].append(_random_element(rng, cx.module(i)))
    return subcomplex_from_generators(cx, gens)


def _random_ideal(rng, budget):
    return Ideal(rng.randint(0, budget))


def _sampled_conditions(sub, budget, rng):
    cx = sub.parent
    ok = dict.fromkeys(SAMPLED, True)
    proper = sub.proper
    for _ in range(budget):
        t = _random_overcomplex(rng, sub) if rng.random() < 0.7 else subcomplex_from_generators(
            cx, {i: [_random_element(rng, cx.module(i))] for i in cx.indices if cx.module(i).dim})
        j_ideal = _random_ideal(rng, budget)
        for i in proper:
            s, ti = sub.part(i), t.part(i)
            p = colon(s)
            # J T_i inside S_i forces T_i inside S_i or J inside P_i; J = (S_i : T_i) is the largest such J
            jmax = _colon_of_submodules(s, ti)
            for j in (jmax, j_ideal):
                if ti.scale(j.gen).issubset(s) and not ti.issubset(s) and not j.issubset(p):
                    ok["ideal_product"] = False
            # (S_i : J) = S_i for J outside P_i
            if not j_ideal.issubset(p) and colon_by_element(s, j_ideal.gen) != s:
                ok["colon_by_ideal"] = False
            # (S_i : N_i) = P_i whenever S_i is strictly inside N_i
            n = s + ti
            if n != s and _colon_of_submodules(s, n) != p:
                ok["overmodule_colon"] = False
            # J strictly above P_i and S_i strictly inside T_i: J T_i not inside S_i
            if n != s:
                for j in (j_ideal, Ideal(gcd(p.gen, j_ideal.gen))):
                    if p.issubset(j) and j != p and n.scale(j.gen).issubset(s):
                        ok["product_avoidance"] = False
    return ok


def _colon_of_submodules(s, t):
    """{r : r T inside S}, the annihilator of the image of S + T in M/S."""
    pres = s.quotient_info
    qmod = pres.module
    anns = [annihilator_of_element(qmod.elem(pres.project(row))) for row in t.rows]
    return ideal_intersection([Ideal(1)] + anns)


def equivalence_audit(sub, sample_budget=8, seed=0):
    """Per-condition booleans over all proper indices."""
    if not sub.proper:
        raise ValueError("the audit needs a proper subcomplex")
    trace = {}
    for name, pred in EXACT_PREDICATES.items():
        trace[name] = all(pred(sub.part(i)) for i in sub.proper)
    rng = random.Random(f"audit/{seed}")
    trace.update(_sampled_conditions(sub, sample_budget, rng))
    return trace


def exact_agreement(trace):
    vals = {trace[k] for k in EXACT}
    return len(vals) == 1


def sampled_consistent(trace):
    """Sampled probes never refute an exact true."""
    if trace["prime"]:
        return all(trace[k] for k in SAMPLED)
    return True


def audited_report(sub, sample_budget=8, seed=0):
    rep = is_prime_subcomplex(sub)
    if rep.verdict != Verdict.NOT_PROPER:
        rep.condition_trace = equivalence_audit(sub, sample_budget, seed)
    return rep
