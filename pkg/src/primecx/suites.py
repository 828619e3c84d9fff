"""Seeded property suites for the structural results on prime subcomplexes.

Every suite takes ``(trials, seed)`` and derives one RNG per trial from the
suite name, the seed and the trial index, so results do not depend on the
order or process in which trials run.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .complexes import (
    Subcomplex,
    is_maximal_subcomplex,
    is_primary_subcomplex,
    is_prime_subcomplex,
    is_pure_subcomplex,
    localize_complex,
    prime_avoidance,
    saturate_subcomplex,
    scale_by_ideal,
    tensor_complex_with_free,
    torsion_subcomplex,
)
from .equivalence import equivalence_audit, exact_agreement, sampled_consistent
from .modules import (
    FgModule,
    Submodule,
    Verdict,
    associated_primes,
    colon,
    is_primary_submodule,
    is_prime_submodule,
    saturate,
    zero_divisors,
)
from .oracle import (
    _sweep,
    brute_ass,
    brute_is_primary_submodule,
    brute_is_prime_submodule,
    brute_quotient_z,
    brute_saturate_mask,
    SearchBox,
)
from .randgen import (
    SMALL_PRIMES,
    direct_sum_complex,
    random_avoidance_family,
    random_complex,
    random_complex_with_proper,
    random_ctx,
    random_prime,
    random_proper_subcomplex,
    random_subcomplex,
    random_torsion_free_complex,
    trial_rng,
)
from .ring import Ideal, RingCtx, is_prime, is_prime_ideal, prime_divisors


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    applicable: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return self.trials - len(self.failures)

    @property
    def ok(self):
        return not self.failures

    def to_doc(self, max_failures=5):
        return {
            "name": self.name,
            "trials": self.trials,
            "applicable": self.applicable,
            "passed": self.passed,
            "failed": len(self.failures),
            "failures": self.failures[:max_failures],
        }


def _is_prime(sub):
    return is_prime_subcomplex(sub).verdict == Verdict.PRIME


def _run(name, trials, seed, body):
    """Run ``body(rng)`` per trial; it returns None (vacuous), True, or a failure description."""
    res = SuiteResult(name, trials)
    for t in range(trials):
        out = body(trial_rng(name, seed, t))
        if out is None:
            continue
        res.applicable += 1
        if out is not True:
            res.failures.append({"trial": t, "detail": out})
    return res


def _shape(cx):
    return [str(m) for m in cx.modules]


def _parts(sub):
    return [[[str(x) for x in r] for r in p.rows] for p in sub.parts]


# ---------------------------------------------------------------------------
# structural suites


def equivalent_conditions_suite(trials, seed, sample_budget=8):
    def body(rng):
        cx, s = random_complex_with_proper(rng)
        trace = equivalence_audit(s, sample_budget, rng.randrange(2**31))
        rep = is_prime_subcomplex(s)
        if rep.witness is not None and not rep.witness.replay(s.part(rep.witness.index)):
            return {"complex": _shape(cx), "reason": "witness does not replay"}
        if exact_agreement(trace) and sampled_consistent(trace) and trace["prime"] == (rep.verdict == Verdict.PRIME):
            return True
        return {"complex": _shape(cx), "parts": _parts(s), "trace": trace}
    return _run("equivalent-conditions", trials, seed, body)


def faithfully_flat_suite(trials, seed):
    def body(rng):
        cx, s = random_complex_with_proper(rng)
        k = rng.choice([1, 2, 3])
        res = tensor_complex_with_free(cx, s, k)
        a = is_prime_subcomplex(s).verdict
        b = is_prime_subcomplex(res.subcomplex).verdict
        c = is_primary_subcomplex(s).verdict
        d = is_primary_subcomplex(res.subcomplex).verdict
        return True if (a, c) == (b, d) else {"complex": _shape(cx), "k": k, "verdicts": [a, b, c, d]}
    return _run("faithfully-flat", trials, seed, body)


def _random_prime_for_avoidance(rng, cx):
    choice = rng.randrange(3)
    if choice == 0:
        p = random_prime(rng, cx.ctx, include_zero=False)
        s = scale_by_ideal(cx, p)
        if s.proper:
            return s
    if choice == 1:
        s = torsion_subcomplex(cx)
        if s.proper:
            return s
    for _ in range(10):
        s = random_subcomplex(rng, cx)
        if s.proper and _is_prime(s):
            return s
    return None


def prime_avoidance_suite(trials, seed, max_family=4):
    def body(rng):
        while True:
            cx = random_complex(rng, random_ctx(rng), 4)
            s = _random_prime_for_avoidance(rng, cx)
            if s is not None:
                break
        n = rng.randint(1, max_family)
        ts = random_avoidance_family(rng, cx, s, n)
        res = prime_avoidance(ts, s)
        if res.status == "holds" and set(res.per_index) == set(s.proper):
            return True
        return {"status": res.status, "complex": _shape(cx), "S": _parts(s),
                "T": [_parts(t) for t in ts], "per_index": {str(k): v for k, v in res.per_index.items()}}
    return _run("prime-avoidance", trials, seed, body)


def per_index_avoidance_suite(trials, seed, max_family=4):
    """Index-by-index form: for every proper j some (T_i)_j lies in S_j or has colon inside P_j."""
    def body(rng):
        while True:
            cx = random_complex(rng, random_ctx(rng), 4)
            s = _random_prime_for_avoidance(rng, cx)
            if s is not None:
                break
        ts = random_avoidance_family(rng, cx, s, rng.randint(1, max_family))
        res = prime_avoidance(ts, s)
        if res.status in ("holds", "theoremViolation") and set(res.per_index) == set(s.proper):
            return True
        return {"status": res.status, "missing": sorted(set(s.proper) - set(res.per_index))}
    return _run("prime-avoidance-per-index", trials, seed, body)


def direct_summand_suite(trials, seed):
    def body(rng):
        ctx = random_ctx(rng)
        a = random_torsion_free_complex(rng, ctx)
        b = _torsion_free_on_window(rng, ctx, a.lo, len(a.modules))
        cx, first = direct_sum_complex(a, b)
        v = is_prime_subcomplex(first).verdict
        return True if v in (Verdict.PRIME, Verdict.NOT_PROPER) else {"complex": _shape(cx), "verdict": v}
    return _run("direct-summand", trials, seed, body)


def _torsion_free_on_window(rng, ctx, lo, length):
    from .complexes import Complex
    from .randgen import random_map
    mods = [FgModule(ctx, (), rng.randint(0, 2)) for _ in range(length)]
    diffs, prev = [], None
    for k in range(1, length):
        d = random_map(rng, mods[k], mods[k - 1], prev.kernel() if prev is not None else None)
        diffs.append(d)
        prev = d
    return Complex(ctx, lo, mods, diffs)


def purity_suite(trials, seed):
    def body(rng):
        cx = random_torsion_free_complex(rng)
        s = random_proper_subcomplex(rng, cx)
        if s is None or not s.proper or any(colon(s.part(i)).gen != 0 for i in s.proper):
            return None
        a, b = _is_prime(s), is_pure_subcomplex(s)
        return True if a == b else {"complex": _shape(cx), "parts": _parts(s), "prime": a, "pure": b}
    return _run("purity", trials, seed, body)


def torsion_suite(trials, seed):
    def body(rng):
        cx = random_complex(rng)
        t = torsion_subcomplex(cx)
        if not t.proper:
            return None
        return True if _is_prime(t) else {"complex": _shape(cx)}
    return _run("torsion", trials, seed, body)


def primary_over_prime_suite(trials, seed):
    def body(rng):
        cx = random_complex(rng)
        t = _random_prime_for_avoidance(rng, cx)
        if t is None:
            return None
        s = t + random_subcomplex(rng, cx) if rng.random() < 0.7 else t
        if not s.proper:
            return None
        rt, rs = is_prime_subcomplex(t), is_primary_subcomplex(s)
        if rs.verdict != Verdict.PRIMARY:
            return None
        if any(rs.ideals[i] != rt.ideals.get(i) for i in s.proper):
            return None
        return True if _is_prime(s) else {"complex": _shape(cx), "S": _parts(s), "T": _parts(t)}
    return _run("primary-over-prime", trials, seed, body)


def saturation_suite(trials, seed):
    def body(rng):
        cx, s = random_complex_with_proper(rng)
        choice = rng.random()
        if choice < 0.5 and s.proper:
            # aim at the hypothesis: take p among the colon's primes
            c = colon(s.part(rng.choice(s.proper)))
            ps = prime_divisors(c.gen) if c.gen else [0]
            p = Ideal(rng.choice(ps))
        else:
            p = random_prime(rng, cx.ctx)
        res = saturate_subcomplex(s, p)
        sat = res.subcomplex
        if not s.issubset(sat):
            return {"reason": "saturation does not contain S"}
        if saturate_subcomplex(sat, p).subcomplex != sat:
            return {"reason": "saturation not idempotent"}
        if not res.hypothesis_ok:
            return True
        rep = is_prime_subcomplex(sat)
        if rep.verdict == Verdict.NOT_PROPER:
            return True
        if rep.verdict == Verdict.PRIME and all(rep.ideals[i] == p for i in sat.proper):
            return True
        return {"complex": _shape(cx), "S": _parts(s), "p": p.gen, "verdict": rep.verdict}
    return _run("saturation", trials, seed, body)


def maximal_colon_suite(trials, seed):
    """Maximal colons give primes; mC is prime; overcomplexes containing m_i C_i stay prime there."""
    def body(rng):
        cx, s = random_complex_with_proper(rng)
        kind = rng.randrange(3)
        if kind == 0:
            cols = [colon(s.part(i)) for i in s.proper]
            if not all(c.gen and is_prime(c.gen) for c in cols):
                return None
            return True if _is_prime(s) else {"complex": _shape(cx), "S": _parts(s)}
        if kind == 1:
            m = random_prime(rng, cx.ctx, include_zero=False)
            sc = scale_by_ideal(cx, m)
            if not sc.proper:
                return None
            return True if _is_prime(sc) else {"complex": _shape(cx), "m": m.gen}
        m = random_prime(rng, cx.ctx, include_zero=False)
        base = scale_by_ideal(cx, m)
        t = base + s
        idx = [i for i in t.proper if cx.module(i).full().scale(m.gen).issubset(t.part(i))]
        if not idx:
            return None
        bad = [i for i in idx if is_prime_submodule(t.part(i)).verdict != Verdict.PRIME]
        return True if not bad else {"complex": _shape(cx), "indices": bad}
    return _run("maximal-colon", trials, seed, body)


def maximal_subcomplex_suite(trials, seed):
    def body(rng):
        cx, s = random_complex_with_proper(rng)
        if rng.random() < 0.5:
            p = random_prime(rng, cx.ctx, include_zero=False)
            s = scale_by_ideal(cx, p)
            if not s.proper:
                return None
        if not is_maximal_subcomplex(s):
            return None
        rep = is_prime_subcomplex(s)
        ok = rep.verdict == Verdict.PRIME and all(is_prime(rep.ideals[i].gen) for i in s.proper)
        return True if ok else {"complex": _shape(cx), "S": _parts(s)}
    return _run("maximal-subcomplex", trials, seed, body)


def localization_suite(trials, seed):
    def body(rng):
        cx, s = random_complex_with_proper(rng)
        a = rng.choice([2, 3, 5, 7, 10, 15])
        res = localize_complex(cx, s, a)
        if not res.proper_flag:
            return None
        before = is_prime_subcomplex(s).verdict
        after = is_prime_subcomplex(res.subcomplex).verdict
        return True if before == after else {"complex": _shape(cx), "a": a, "before": before, "after": after}
    return _run("localization", trials, seed, body)


# ---------------------------------------------------------------------------
# oracle equivalence on finite modules


def invariant_chains(max_order):
    """Every invariant-factor list d_1 | d_2 | ... with all d > 1 and product <= max_order."""
    out = []

    def grow(chain, prod_so_far):
        if chain:
            out.append(tuple(chain))
        base = chain[-1] if chain else 2
        d = base
        while prod_so_far * d <= max_order:
            if not chain or d % chain[-1] == 0:
                grow(chain + [d], prod_so_far * d)
            d += 1 if not chain else chain[-1]

    grow([], 1)
    return sorted(out, key=lambda c: (len(c), c))


def _random_gens(rng, module):
    n = rng.randint(0, 3)
    gens = []
    for _ in range(n):
        coords = [rng.randrange(d) for d in module.invariants]
        if rng.random() < 0.3:
            c = rng.choice([2, 3, 4, 5, 6])
            coords = [c * x for x in coords]
        gens.append(module.elem(coords))
    return gens


def _check_finite(module, gens, box):
    """Compare every fast decider against the oracle; returns a list of mismatch names."""
    sub = Submodule.span(module, gens)
    sw = _sweep(sub, gens)
    bad = []
    # the fast path's canonical rows must span exactly what the raw generators span
    fast_mask = sw.span_mask([g.coords for g in sub.generators()])
    if not np.array_equal(fast_mask, sw.mask):
        return ["membership"]
    for name, fast, brute in (
        ("prime", is_prime_submodule(sub), brute_is_prime_submodule(sub, box, gens)),
        ("primary", is_primary_submodule(sub), brute_is_primary_submodule(sub, box, gens)),
    ):
        if not brute.proper:
            if fast.verdict != Verdict.NOT_PROPER:
                bad.append(name)
            continue
        if fast.affirmative != brute.holds:
            bad.append(name)
        elif fast.witness is not None:
            w = fast.witness
            r = int(w.r)
            mcoords = [int(x) for x in w.m.coords]
            i_m = int(sw.encode(np.array([mcoords]))[0])
            i_rm = int(sw.encode(np.array([[r * x for x in mcoords]]))[0])
            excluded = sw.in_radical(r) if name == "primary" else (r % sw.colon_gen == 0)
            if sw.mask[i_m] or not sw.mask[i_rm] or excluded:
                bad.append(name + "-witness")
    if colon(sub).gen != sw.colon_gen:
        bad.append("colon")
    qmod = sub.quotient_info.module
    zd = zero_divisors(qmod)
    if {r for r in range(box.scalar_bound + 1) if zd.contains(r)} != brute_quotient_z(sub, box, gens):
        bad.append("zero-divisors")
    if list(associated_primes(qmod).primes) != brute_ass(sub, gens):
        bad.append("associated-primes")
    primes = [0] + prime_divisors(module.exponent()) + [p for p in SMALL_PRIMES if module.exponent() % p][:1]
    for p in primes:
        sat = saturate(sub, Ideal(p))
        sat_mask = sw.span_mask([g.coords for g in sat.generators()])
        if not np.array_equal(sat_mask, brute_saturate_mask(sub, Ideal(p), gens)):
            bad.append(f"saturate-{p}")
    return bad


def oracle_equivalence_suite(max_order=200, subs_per_module=20, seed=0):
    """All finite Z-modules of order <= max_order, each with random submodules."""
    ctx = RingCtx(1)
    res = SuiteResult("oracle-equivalence")
    for chain in invariant_chains(max_order):
        module = FgModule(ctx, chain, 0)
        rng = random.Random(f"oracle/{seed}/{chain}")
        for k in range(subs_per_module):
            gens = _random_gens(rng, module)
            res.trials += 1
            res.applicable += 1
            bad = _check_finite(module, gens, SearchBox(2 * module.exponent()))
            if bad:
                res.failures.append({"module": list(chain), "gens": [[str(x) for x in g.coords] for g in gens],
                                     "mismatch": bad})
    return res


SUITES = {
    "equivalent-conditions": equivalent_conditions_suite,
    "faithfully-flat": faithfully_flat_suite,
    "prime-avoidance": prime_avoidance_suite,
    "prime-avoidance-per-index": per_index_avoidance_suite,
    "direct-summand": direct_summand_suite,
    "purity": purity_suite,
    "torsion": torsion_suite,
    "primary-over-prime": primary_over_prime_suite,
    "saturation": saturation_suite,
    "maximal-colon": maximal_colon_suite,
    "maximal-subcomplex": maximal_subcomplex_suite,
    "localization": localization_suite,
}


def run_audit(trials, seed, names=None):
    """Run the named suites (default: all) and return their results in a fixed order."""
    names = list(SUITES) if names is None else names
    return [SUITES[n](trials, seed) for n in names]
