"""Čech complexes of Z for pairwise-coprime integers, and diagonal subcomplexes.

Degree k of the Čech complex on a_1..a_n is the direct sum over k-subsets J
(lexicographic order) of Z[1/a_J], with a_J the product over J.  The
differential sends x to (dx)_J = sum_t (-1)^t x_{J minus j_t}.

Subcomplexes are diagonal: per summand a principal ideal g_j Z[1/u_j].  Every
component is viewed as a Z-module, so colons and primeness are over Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm, prod

from .errors import ClosureViolation, NotCoprime, TooManyElements, ValidationError
from .modules import PrimenessReport, Verdict
from .ring import Ideal, fmt_elem, prime_divisors, squarefree_kernel, valuation

MAX_ELEMENTS = 6


def _strip(n, u):
    n = abs(int(n))
    if n == 0:
        return 0
    for p in prime_divisors(u):
        while n % p == 0:
            n //= p
    return n


def _in_localization(x, u):
    """x in Z[1/u]."""
    den = Fraction(x).denominator
    return _strip(den, u) == 1


@dataclass(frozen=True)
class LocFreeModule:
    """The direct sum of Z[1/u_j] over the summands."""

    summands: tuple

    def __post_init__(self):
        for u in self.summands:
            if u < 1 or squarefree_kernel(u) != u:
                raise ValueError(f"summand {u} is not a positive squarefree integer")

    @property
    def dim(self):
        return len(self.summands)

    def contains(self, vec):
        return len(vec) == self.dim and all(_in_localization(x, u) for x, u in zip(vec, self.summands))

    def __str__(self):
        if not self.summands:
            return "0"
        return " + ".join("Z" if u == 1 else f"Z[1/{u}]" for u in self.summands)


@dataclass(frozen=True)
class LocFreeMap:
    source: LocFreeModule
    target: LocFreeModule
    entries: tuple  # target.dim rows, source.dim columns

    def __post_init__(self):
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x == 0:
                    continue
                ui, uj = self.target.summands[i], self.source.summands[j]
                if _strip(uj, ui) != 1 or not _in_localization(x, ui):
                    raise ValidationError(i, f"entry ({i}, {j}) does not land in Z[1/{ui}]")

    def __call__(self, vec):
        return tuple(sum((Fraction(x) * v for x, v in zip(row, vec)), Fraction(0)) for row in self.entries)


@dataclass(frozen=True)
class CechComplex:
    elements: tuple
    subsets: tuple  # per degree, the lex-ordered index subsets
    components: tuple
    diffs: tuple  # diffs[k] : degree k -> degree k + 1

    @property
    def degrees(self):
        return range(len(self.components))

    def component(self, k):
        return self.components[k]

    def summand_label(self, k, j):
        return "*".join(str(self.elements[t]) for t in self.subsets[k][j]) or "1"


def build_cech(elements):
    elements = tuple(int(a) for a in elements)
    if len(elements) > MAX_ELEMENTS:
        raise TooManyElements(f"at most {MAX_ELEMENTS} elements are supported, got {len(elements)}")
    for a in elements:
        if a <= 1:
            raise NotCoprime(f"elements must exceed 1, got {a}")
    for a, b in combinations(elements, 2):
        if gcd(a, b) != 1:
            raise NotCoprime(f"{a} and {b} are not coprime")
    n = len(elements)
    subsets = tuple(tuple(combinations(range(n), k)) for k in range(n + 1))
    comps = tuple(LocFreeModule(tuple(squarefree_kernel(prod(elements[t] for t in s)) for s in subs))
                  for subs in subsets)
    diffs = []
    for k in range(n):
        src, tgt = subsets[k], subsets[k + 1]
        pos = {s: j for j, s in enumerate(src)}
        rows = []
        for big in tgt:
            row = [Fraction(0)] * len(src)
            for t in range(len(big)):
                row[pos[big[:t] + big[t + 1:]]] = Fraction((-1) ** t)
            rows.append(tuple(row))
        diffs.append(LocFreeMap(comps[k], comps[k + 1], tuple(rows)))
    cx = CechComplex(elements, subsets, comps, tuple(diffs))
    bad = check_dsquared(cx)
    if bad is not None:
        raise ValidationError(bad[0], "d o d != 0")
    return cx


def check_dsquared(cx):
    """None when d o d vanishes on every basis element, else (degree, basis index)."""
    for k in range(len(cx.diffs) - 1):
        d1, d2 = cx.diffs[k], cx.diffs[k + 1]
        for j in range(d1.source.dim):
            e = [Fraction(int(t == j)) for t in range(d1.source.dim)]
            if any(d2(d1(e))):
                return k, j
    return None


# ---------------------------------------------------------------------------
# diagonal subcomplexes


@dataclass(frozen=True)
class IdealPart:
    """The submodule of g_j Z[1/u_j] summands; generators are u_j-stripped."""

    gens: tuple

    @classmethod
    def canonical(cls, gens, component):
        if len(gens) != component.dim:
            raise ValueError("one generator per summand is required")
        return cls(tuple(_strip(g, u) for g, u in zip(gens, component.summands)))

    def is_full(self):
        return all(g == 1 for g in self.gens)

    def contains(self, vec, component):
        for x, g, u in zip(vec, self.gens, component.summands):
            x = Fraction(x)
            if g == 0:
                if x != 0:
                    return False
            elif _strip(x.numerator, u) % g:
                return False
        return True


def colon_over_z(part, component=None):
    """(S : C) over Z: the lcm of the generators, zero if any generator is zero."""
    if component is not None and len(part.gens) != component.dim:
        raise ValueError("summand count mismatch")
    if any(g == 0 for g in part.gens):
        return Ideal(0)
    return Ideal(lcm(1, *part.gens))


@dataclass
class CechSubcomplex:
    parent: CechComplex
    parts: tuple

    def part(self, k):
        return self.parts[k]

    @property
    def proper(self):
        return [k for k, p in enumerate(self.parts) if not p.is_full()]

    def to_doc(self):
        return {f"degree_{k}": list(p.gens) for k, p in enumerate(self.parts)}


def cech_subcomplex(cx, gens_by_degree, check=True):
    """Diagonal subcomplex; degrees missing from ``gens_by_degree`` are full."""
    parts = []
    for k in cx.degrees:
        comp = cx.component(k)
        gens = gens_by_degree.get(k, [1] * comp.dim)
        parts.append(IdealPart.canonical(gens, comp))
    sub = CechSubcomplex(cx, tuple(parts))
    if check:
        bad = validate_cech_subcomplex(sub)
        if bad is not None:
            raise ClosureViolation(*bad)
    return sub


def validate_cech_subcomplex(sub):
    """None, or (degree, summand) of a generator g_j e_j whose image leaves S.

    The image of g_j e_j has entries +-g_j on summands J containing j, which lie
    in g_J Z[1/u_J] iff g_J divides the u_J-stripped g_j.
    """
    cx = sub.parent
    for k, d in enumerate(cx.diffs):
        src, tgt = sub.part(k), sub.part(k + 1)
        for j, g in enumerate(src.gens):
            col = [row[j] * g for row in d.entries]
            if not tgt.contains(col, cx.component(k + 1)):
                return k, j
    return None


@dataclass
class CechWitness:
    index: int
    r: int
    summand: int
    m: tuple

    def equation(self):
        rm = [self.r * x for x in self.m]
        show = lambda v: "[" + ", ".join(str(Fraction(x)) for x in v) + "]"
        return f"{self.r} * {show(self.m)} = {show(rm)} in S^{self.index}"

    def replay(self, sub, primary=False):
        comp = sub.parent.component(self.index)
        part = sub.part(self.index)
        bound = colon_over_z(part)
        if primary and bound.gen:
            bound = Ideal(prod(prime_divisors(bound.gen)))
        rm = [self.r * x for x in self.m]
        return part.contains(rm, comp) and not part.contains(self.m, comp) and not bound.contains(self.r)

    def to_doc(self):
        return {"index": self.index, "r": fmt_elem(Fraction(self.r)), "summand": self.summand,
                "m": [fmt_elem(Fraction(x)) for x in self.m], "replay": self.equation()}


def _decide_part(part, primary):
    """(affirmative, ideal, witness data) for one proper degree."""
    nonunit = [g for g in part.gens if g != 1]
    ideal = colon_over_z(part)
    nonzero = [g for g in nonunit if g]
    if not nonzero:
        return True, ideal, None  # quotient is torsion-free
    primes = sorted({p for g in nonzero for p in prime_divisors(g)})
    if len(nonzero) == len(nonunit) and len(primes) == 1:
        p = primes[0]
        if primary or all(g == p for g in nonzero):
            return True, (Ideal(p) if primary else ideal), None
    q = primes[0]
    j = max((j for j, g in enumerate(part.gens) if g not in (0, 1) and g % q == 0),
            key=lambda j: (valuation(part.gens[j], q), -j))
    return False, ideal, (q, j)


def _decide(sub, primary):
    positive = Verdict.PRIMARY if primary else Verdict.PRIME
    negative = Verdict.NOT_PRIMARY if primary else Verdict.NOT_PRIME
    proper = sub.proper
    per_index = {k: Verdict.NOT_PROPER for k in sub.parent.degrees}
    if not proper:
        return PrimenessReport(Verdict.NOT_PROPER, per_index=per_index)
    ideals, witness = {}, None
    for k in proper:
        ok, ideal, data = _decide_part(sub.part(k), primary)
        ideals[k] = ideal
        per_index[k] = positive if ok else negative
        if not ok and witness is None:
            q, j = data
            g = sub.part(k).gens[j]
            m = [0] * sub.parent.component(k).dim
            m[j] = g // q
            witness = CechWitness(k, q, j, tuple(m))
    verdict = negative if witness else positive
    return PrimenessReport(verdict, ideals, witness=witness, per_index=per_index)


def is_prime_cech_subcomplex(sub):
    return _decide(sub, primary=False)


def is_primary_cech_subcomplex(sub):
    return _decide(sub, primary=True)


# ---------------------------------------------------------------------------
# reproduction of the three-element example


@dataclass
class CechReproduction:
    components_ok: bool
    differentials_ok: bool
    dsquared_ok: bool
    prime_report: PrimenessReport
    primary_report: PrimenessReport
    primary_as_prime: PrimenessReport
    literal_report: PrimenessReport
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return (self.components_ok and self.differentials_ok and self.dsquared_ok
                and self.prime_report.verdict == Verdict.PRIME
                and self.primary_report.verdict == Verdict.PRIMARY
                and self.primary_as_prime.verdict == Verdict.NOT_PRIME
                and self.literal_report.per_index.get(1) == Verdict.NOT_PROPER)

    def to_doc(self):
        return {
            "components_ok": self.components_ok,
            "differentials_ok": self.differentials_ok,
            "dsquared_ok": self.dsquared_ok,
            "prime": self.prime_report.to_doc(),
            "primary": self.primary_report.to_doc(),
            "primary_as_prime": self.primary_as_prime.to_doc(),
            "literal": self.literal_report.to_doc(),
            "notes": list(self.notes),
            "passed": self.passed,
        }


def symbolic_differentials(cx):
    """Apply each differential to symbolic inputs n_j / u_j^{m_j} (sympy expressions)."""
    import sympy

    out = []
    for k, d in enumerate(cx.diffs):
        comp = cx.component(k)
        xs = []
        for j, u in enumerate(comp.summands, 1):
            n, m = sympy.symbols(f"n{j} m{j}", integer=True)
            xs.append(n / sympy.Integer(u) ** m if u != 1 else sympy.Symbol("n", integer=True))
        rows = [sum((int(c) * x for c, x in zip(row, xs)), sympy.Integer(0)) for row in d.entries]
        out.append((xs, rows))
    return out


def _displayed_formulas():
    """The three differential formulas for 3, 5, 7 as displayed in the source.

    Degree-two summands there are ordered Z[1/35], Z[1/21], Z[1/15].
    """
    import sympy

    n = sympy.Symbol("n", integer=True)
    n1, n2, n3, m1, m2, m3 = sympy.symbols("n1 n2 n3 m1 m2 m3", integer=True)
    d0 = [n, n, n]
    d1 = [5**m3 * n3 / sympy.Integer(35) ** m3 - 7**m2 * n2 / sympy.Integer(35) ** m2,
          3**m3 * n3 / sympy.Integer(21) ** m3 - 7**m1 * n1 / sympy.Integer(21) ** m1,
          3**m2 * n2 / sympy.Integer(15) ** m2 - 5**m1 * n1 / sympy.Integer(15) ** m1]
    # d2 takes (n1/35^m1, n2/21^m2, n3/15^m3)
    d2 = [7**m3 * n3 / sympy.Integer(105) ** m3 - 5**m2 * n2 / sympy.Integer(105) ** m2
          + 3**m1 * n1 / sympy.Integer(105) ** m1]
    return d0, d1, d2


def reproduce_three_element_example(q=2):
    """Rebuild the 3, 5, 7 example and decide the substituted subcomplex pair.

    The displayed prime part uses the ideal generated by 1/3, a unit of Z[1/3];
    it is replaced by q Z[1/3] (prime) and q^2 Z[1/3] (primary, not prime).
    """
    import sympy

    cx = build_cech([3, 5, 7])
    expected = [(1,), (3, 5, 7), (15, 21, 35), (105,)]
    components_ok = [c.summands for c in cx.components] == expected

    ours = symbolic_differentials(cx)
    shown = _displayed_formulas()
    n1, n2, n3, m1, m2, m3 = sympy.symbols("n1 n2 n3 m1 m2 m3", integer=True)
    # degree 2 is lex ordered here (15, 21, 35); the display uses (35, 21, 15)
    display_order = [2, 1, 0]
    ok = all(sympy.simplify(a - b) == 0 for a, b in zip(ours[0][1], shown[0]))
    ok &= all(sympy.simplify(a - b) == 0 for a, b in zip([ours[1][1][i] for i in display_order], shown[1]))
    d2_display_inputs = {sympy.Symbol("n1", integer=True): n3, sympy.Symbol("n3", integer=True): n1,
                         sympy.Symbol("m1", integer=True): m3, sympy.Symbol("m3", integer=True): m1}
    ours_d2 = ours[2][1][0].xreplace(d2_display_inputs)
    ok &= sympy.simplify(ours_d2 - shown[2][0]) == 0
    dsq = check_dsquared(cx) is None

    prime_sub = cech_subcomplex(cx, {0: [0], 1: [q, 1, 1]})
    primary_sub = cech_subcomplex(cx, {0: [0], 1: [q * q, 1, 1]})
    # the literal part: generator 1/3 in Z[1/3] strips to 1
    literal = cech_subcomplex(cx, {0: [0], 1: [Fraction(1, 3).numerator, 1, 1]})
    literal_report = is_prime_cech_subcomplex(literal)
    notes = [
        f"degree-1 generator 1/3 is a unit of Z[1/3]; substituted q = {q} for the prime case "
        f"and q^2 = {q * q} for the primary case",
        "literal subcomplex is not proper at degree 1; its verdict comes from degree 0 alone",
        "degree 0 of each subcomplex is 0 so that the differential closes",
        "degree-2 summands are stored in lex order 15, 21, 35 and compared after reordering",
    ]
    literal_report.notes = list(notes[:2])
    return CechReproduction(
        components_ok, bool(ok), dsq,
        is_prime_cech_subcomplex(prime_sub),
        is_primary_cech_subcomplex(primary_sub),
        is_prime_cech_subcomplex(primary_sub),
        literal_report,
        notes,
    )
