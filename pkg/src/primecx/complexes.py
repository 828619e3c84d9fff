"""Chain complexes of finitely generated R_u-modules and their subcomplexes.

A complex lives on a finite window ``lo..hi``; ``diff(i)`` is the map
``C_i -> C_{i-1}`` and every component outside the window is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd

from .errors import ClosureViolation, NotFree, PNotPrime, ValidationError
from .modules import (
    ZERO,
    FgModule,
    ModuleMap,
    PrimenessReport,
    Submodule,
    Verdict,
    associated_primes,
    colon,
    intersect,
    is_primary_submodule,
    is_prime_submodule,
    localize_module,
    saturate,
    tensor_with_free,
    torsion_submodule,
)
from .ring import (
    UNIT_IDEAL,
    ZERO_IDEAL,
    Ideal,
    fmt_elem,
    ideal_intersection,
    is_prime,
    is_prime_ideal,
    prime_divisors,
    valuation,
)


class Complex:
    def __init__(self, ctx, lo, modules, diffs, check=True):
        self.ctx = ctx
        self.lo = lo
        self.modules = tuple(modules)
        self.hi = lo + len(self.modules) - 1
        self.diffs = tuple(diffs)
        if not self.modules:
            raise ValueError("a complex needs at least one component")
        if len(self.diffs) != len(self.modules) - 1:
            raise ValueError("need one differential per adjacent pair of components")
        for k, d in enumerate(self.diffs):
            i = lo + k + 1
            if d.domain != self.modules[k + 1] or d.codomain != self.modules[k]:
                raise ValueError(f"differential {i} has the wrong domain or codomain")
        for m in self.modules:
            if m.ctx != ctx:
                raise ValueError("all components must share one base ring")
        if check:
            bad = validate_complex(self)
            if bad is not None:
                raise ValidationError(bad, "d o d != 0")

    @property
    def indices(self):
        return range(self.lo, self.hi + 1)

    def module(self, i):
        if self.lo <= i <= self.hi:
            return self.modules[i - self.lo]
        return FgModule(self.ctx)

    def diff(self, i):
        """d_i : C_i -> C_{i-1} (None outside the window)."""
        if self.lo < i <= self.hi:
            return self.diffs[i - self.lo - 1]
        return None

    def full(self):
        return Subcomplex(self, [m.full() for m in self.modules], check=False)

    def zero(self):
        return Subcomplex(self, [m.zero_submodule() for m in self.modules], check=False)

    def __eq__(self, other):
        return (isinstance(other, Complex) and self.ctx == other.ctx and self.lo == other.lo
                and self.modules == other.modules and self.diffs == other.diffs)

    def __hash__(self):
        return hash((self.ctx, self.lo, self.modules, self.diffs))

    def __str__(self):
        parts = []
        for i in reversed(self.indices):
            parts.append(f"C_{i} = {self.module(i)}")
        return " -> ".join(parts)


class Subcomplex:
    def __init__(self, parent, parts, check=True):
        self.parent = parent
        self.parts = tuple(parts)
        if len(self.parts) != len(parent.modules):
            raise ValueError("one submodule per component is required")
        for m, s in zip(parent.modules, self.parts):
            if s.ambient != m:
                raise ValueError("part does not live in the matching component")
        if check:
            bad = validate_subcomplex(self)
            if bad is not None:
                raise ClosureViolation(*bad)

    def part(self, i):
        if self.parent.lo <= i <= self.parent.hi:
            return self.parts[i - self.parent.lo]
        return self.parent.module(i).zero_submodule()

    def __eq__(self, other):
        return isinstance(other, Subcomplex) and self.parent == other.parent and self.parts == other.parts

    def __hash__(self):
        return hash((self.parent, self.parts))

    def issubset(self, other):
        return all(a.issubset(b) for a, b in zip(self.parts, other.parts))

    __le__ = issubset

    def __and__(self, other):
        return Subcomplex(self.parent, [intersect(a, b) for a, b in zip(self.parts, other.parts)], check=False)

    def __add__(self, other):
        return Subcomplex(self.parent, [a + b for a, b in zip(self.parts, other.parts)], check=False)

    @cached_property
    def proper(self):
        return proper_indices(self)

    def to_doc(self):
        return {"parts": [p.to_doc() for p in self.parts]}


def validate_complex(cx):
    """None when d o d = 0, else the index i with d_i o d_{i+1} != 0."""
    for i in range(cx.lo + 1, cx.hi):
        if not cx.diff(i).compose(cx.diff(i + 1)).is_zero():
            return i
    return None


def validate_subcomplex(sub):
    """None when closed under the differentials, else (index, offending generator)."""
    cx = sub.parent
    for i in range(cx.lo + 1, cx.hi + 1):
        d = cx.diff(i)
        target = sub.part(i - 1)
        for g in sub.part(i).generators():
            if not target.contains(d(g)):
                return i, g
    return None


def proper_indices(sub):
    return [i for i, s in zip(sub.parent.indices, sub.parts) if not s.is_full()]


def _combine(sub, decide, positive):
    reports = {i: decide(sub.part(i), i) for i in sub.parent.indices}
    per_index = {i: r.verdict for i, r in reports.items()}
    proper = [i for i in sub.parent.indices if per_index[i] != Verdict.NOT_PROPER]
    if not proper:
        return PrimenessReport(Verdict.NOT_PROPER, per_index=per_index)
    ideals = {i: reports[i].ideals[i] for i in proper}
    for i in proper:
        if not reports[i].affirmative:
            return PrimenessReport(reports[i].verdict, ideals, witness=reports[i].witness, per_index=per_index)
    return PrimenessReport(positive, ideals, per_index=per_index)


def is_prime_subcomplex(sub):
    return _combine(sub, is_prime_submodule, Verdict.PRIME)


def is_primary_subcomplex(sub):
    return _combine(sub, is_primary_submodule, Verdict.PRIMARY)


def residual(sub):
    """(S : C), the intersection of the per-index colons."""
    return ideal_intersection([colon(s) for s in sub.parts], sub.parent.ctx)


@dataclass(frozen=True)
class IdealUnion:
    """A union of principal ideals, each given by a canonical generator.

    Used for zero-divisor sets of complexes, which are intersections of
    unions of primes and therefore unions of (squarefree) principal ideals.
    """

    gens: tuple = ()

    def contains(self, r):
        r = Fraction(r)
        return any((r == 0) if g == 0 else (r.numerator % g == 0) for g in self.gens)

    def is_empty(self):
        return not self.gens

    def to_doc(self):
        return list(self.gens)

    def __str__(self):
        return "{}" if not self.gens else " U ".join(f"({g})" for g in self.gens)


def _minimal_gens(gens):
    gens = sorted(set(gens), key=lambda g: (g == 0, g))
    out = []
    for g in gens:
        # (g) is redundant when it sits inside an ideal already kept
        if any((g == 0) or (h != 0 and g % h == 0) for h in out):
            continue
        out.append(g)
    return tuple(sorted(out))


def zero_divisors_of_complex(cx):
    """Z(C) = intersection over the window of Z(C_i)."""
    acc = None
    for m in cx.modules:
        ps = associated_primes(m)
        gens = list(ps.primes) + ([0] if ps.includes_zero else [])
        if acc is None:
            acc = _minimal_gens(gens)
        else:
            combos = []
            for a, b in product(acc, gens):
                combos.append(0 if a == 0 or b == 0 else a * b // gcd(a, b))
            acc = _minimal_gens(combos)
    return IdealUnion(acc or ())


def annihilator_of_complex(cx):
    return ideal_intersection([UNIT_IDEAL] + [colon(m.zero_submodule()) for m in cx.modules], cx.ctx)


def torsion_subcomplex(cx):
    sub = Subcomplex(cx, [torsion_submodule(m) for m in cx.modules], check=False)
    bad = validate_subcomplex(sub)
    if bad is not None:
        raise ClosureViolation(*bad)
    return sub


def _critical_scalars(module, part):
    """Scalars whose purity checks decide purity of ``part`` in ``module``.

    Purity is local, and locally at a prime p it suffices to test powers of p
    up to one past the largest p-exponent of any invariant involved.
    """
    invs = list(module.invariants) + list(part.quotient_info.module.invariants)
    out = []
    for p in sorted({p for d in invs for p in prime_divisors(d)}):
        top = max(valuation(d, p) for d in invs if d % p == 0)
        out.extend(p ** k for k in range(1, top + 2))
    return out


def is_pure_subcomplex(sub, test_bound=0):
    """r C_j intersect S_j == r S_j for every r and every proper index j."""
    for i in sub.proper:
        s = sub.part(i)
        m = sub.parent.module(i)
        full = m.full()
        scalars = _critical_scalars(m, s) + list(range(2, test_bound + 1))
        for r in scalars:
            if intersect(full.scale(r), s) != s.scale(r):
                return False
    return True


def is_maximal_subcomplex(sub):
    if not sub.proper:
        return False
    for i in sub.proper:
        q = sub.part(i).quotient_info.module
        if q.free or len(q.invariants) != 1 or not is_prime(q.invariants[0]):
            return False
    return True


def scale_by_ideal(cx, ideal):
    return Subcomplex(cx, [m.full().scale(ideal.gen) for m in cx.modules], check=False)


def subcomplex_from_generators(cx, gens_by_index):
    """Smallest subcomplex containing the given elements ({index: [elements]})."""
    parts = []
    for i in cx.indices:
        gens = list(gens_by_index.get(i, []))
        d = cx.diff(i + 1)
        if d is not None:
            gens += [d(g) for g in gens_by_index.get(i + 1, [])]
        parts.append(Submodule.span(cx.module(i), gens))
    return Subcomplex(cx, parts, check=False)


@dataclass
class TensorResult:
    complex: Complex
    subcomplex: Subcomplex
    tensors: tuple


def tensor_complex_with_free(cx, sub, k):
    """F (x) C and F (x) S for the free complex F = R^k concentrated in degree 0."""
    tens = [tensor_with_free(m, k) for m in cx.modules]
    diffs = [tens[j].embed_map(tens[j - 1], cx.diffs[j - 1]) for j in range(1, len(tens))]
    big = Complex(cx.ctx, cx.lo, [t.module for t in tens], diffs, check=False)
    parts = [t.embed(s) for t, s in zip(tens, sub.parts)]
    return TensorResult(big, Subcomplex(big, parts, check=False), tuple(tens))


@dataclass
class LocalizationResult:
    complex: Complex
    subcomplex: Subcomplex
    proper_flag: bool
    localizations: tuple


def localization_hypothesis(sub, a):
    """No power of ``a`` may act as zero on C_i/S_i at any proper index.

    Concretely ``a`` must be coprime to the torsion exponent of every proper
    quotient; when the colon is non-zero this is gcd(a, colon) = 1.
    """
    for i in sub.proper:
        q = sub.part(i).quotient_info.module
        if any(gcd(a, d) != 1 for d in q.invariants):
            return False
    return True


def localize_complex(cx, sub, a):
    locs = [localize_module(m, a) for m in cx.modules]
    ctx = cx.ctx.localize(a)
    diffs = [locs[j].push_map(locs[j - 1], cx.diffs[j - 1]) for j in range(1, len(locs))]
    big = Complex(ctx, cx.lo, [l.module for l in locs], diffs, check=False)
    parts = [l.push(s) for l, s in zip(locs, sub.parts)]
    return LocalizationResult(big, Subcomplex(big, parts, check=False), localization_hypothesis(sub, a), tuple(locs))


@dataclass
class SaturationResult:
    subcomplex: Subcomplex
    hypothesis_ok: bool
    violations: list = field(default_factory=list)


def saturate_subcomplex(sub, p):
    """Componentwise saturation at the prime p.

    ``hypothesis_ok`` records whether every proper colon equals p, the
    setting in which the saturation is guaranteed to be p-prime.
    """
    if not is_prime_ideal(p):
        raise PNotPrime(f"{p} is not a prime ideal")
    bad = [i for i in sub.proper if colon(sub.part(i)) != p]
    parts = [saturate(s, p) for s in sub.parts]
    out = Subcomplex(sub.parent, parts, check=False)
    closure = validate_subcomplex(out)
    if closure is not None:
        raise ClosureViolation(*closure)
    return SaturationResult(out, not bad, bad)


def construct_free_prime(cx, p, selectors):
    """Saturate N + pF at p, N spanned by the selected basis columns (0-based) per index."""
    if any(m.invariants for m in cx.modules):
        raise NotFree("every component must be free")
    if p.gen == 0 or not is_prime_ideal(p):
        raise PNotPrime(f"{p} must be a non-zero prime")
    parts = []
    for i, m in zip(cx.indices, cx.modules):
        basis = m.basis()
        gens = [basis[c] for c in selectors.get(i, ())]
        parts.append(Submodule.span(m, gens) + m.full().scale(p.gen))
    t = Subcomplex(cx, parts, check=False)
    bad = validate_subcomplex(t)
    if bad is not None:
        raise ClosureViolation(*bad)
    return saturate_subcomplex(t, p).subcomplex


# ---------------------------------------------------------------------------
# prime avoidance


@dataclass
class AvoidanceResult:
    status: str  # holds | inclusionFailure | notPrime | theoremViolation
    index: int = None
    reason: str = None
    witness_index: int = None
    witness: object = None
    per_index: dict = field(default_factory=dict)

    @property
    def holds(self):
        return self.status == "holds"

    def to_doc(self):
        doc = {"status": self.status, "index": self.index, "reason": self.reason}
        if self.witness is not None:
            doc["witness"] = {"index": self.witness_index, "m": [fmt_elem(x) for x in self.witness.coords]}
        doc["per_index"] = {str(j): v for j, v in sorted(self.per_index.items())}
        return doc


def prime_avoidance(ts, sub):
    """Given T_1 ... T_n with their intersection inside the prime S, find i with
    T_i inside S or (T_i : C) inside (S : C).

    Indices in the result are 1-based.  ``per_index`` records, for every proper
    index j of S, the first i with (T_i)_j inside S_j or ((T_i)_j : C_j)
    inside (S_j : C_j).
    """
    if not ts:
        raise ValueError("need at least one subcomplex")
    if not is_prime_subcomplex(sub).verdict == Verdict.PRIME:
        return AvoidanceResult("notPrime", reason="S is not a prime subcomplex")
    meet = ts[0]
    for t in ts[1:]:
        meet = meet & t
    for i, (a, b) in enumerate(zip(meet.parts, sub.parts)):
        for g in a.generators():
            if not b.contains(g):
                return AvoidanceResult("inclusionFailure", witness_index=sub.parent.lo + i, witness=g,
                                       reason="intersection is not contained in S")
    per_index = {}
    for j in sub.proper:
        sj, pj = sub.part(j), colon(sub.part(j))
        for k, t in enumerate(ts, 1):
            if t.part(j).issubset(sj) or colon(t.part(j)).issubset(pj):
                per_index[j] = k
                break
    res_s = residual(sub)
    for k, t in enumerate(ts, 1):
        if t.issubset(sub):
            return AvoidanceResult("holds", k, "contained", per_index=per_index)
        if residual(t).issubset(res_s):
            return AvoidanceResult("holds", k, "residual", per_index=per_index)
    return AvoidanceResult("theoremViolation", reason="no T_i is contained in S and no residual (T_i:C) lies in (S:C)",
                           per_index=per_index)
