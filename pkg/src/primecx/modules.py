"""Finitely generated modules over R_u in invariant-factor form.

A module ``M = R/(d_1) + ... + R/(d_r) + R^f`` is stored by its invariant
factors and free rank; its elements are coordinate vectors in that basis with
torsion coordinates reduced into ``[0, d_j)``.  A submodule is stored as the
canonical Hermite form of its preimage in ``R^(r+f)`` (the relations
``d_j e_j`` are always part of the span), so two submodules are equal exactly
when their stored rows are equal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, prod

from . import linalg
from .errors import PNotPrime
from .ring import (
    UNIT_IDEAL,
    ZERO_IDEAL,
    Ideal,
    RingCtx,
    factor,
    fmt_elem,
    is_prime,
    is_prime_ideal,
    prime_divisors,
    radical,
    residue,
    valuation,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class FgModule:
    ctx: RingCtx
    invariants: tuple = ()
    free: int = 0
    presentation: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "invariants", tuple(int(d) for d in self.invariants))
        if self.free < 0:
            raise ValueError("free rank must be non-negative")
        for k, d in enumerate(self.invariants):
            if d <= 1:
                raise ValueError(f"invariant factor {d} must exceed 1")
            if self.ctx.strip(d) != d:
                raise ValueError(f"invariant factor {d} shares a prime with u={self.ctx.u}")
            if k and d % self.invariants[k - 1]:
                raise ValueError(f"invariant factors {self.invariants} do not form a divisibility chain")

    @property
    def rank(self):
        return len(self.invariants)

    @property
    def dim(self):
        return len(self.invariants) + self.free

    @property
    def is_zero(self):
        return self.dim == 0

    @property
    def is_finite(self):
        return self.free == 0

    def order(self):
        return prod(self.invariants) if self.free == 0 else None

    def exponent(self):
        if self.free:
            return 0
        return self.invariants[-1] if self.invariants else 1

    def modulus(self, j):
        """Canonical generator of the annihilator of the j-th basis vector."""
        return self.invariants[j] if j < self.rank else 0

    def reduce(self, coords):
        coords = tuple(Fraction(x) for x in coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        r = self.rank
        return tuple(Fraction(residue(x, d)) for x, d in zip(coords[:r], self.invariants)) + coords[r:]

    def elem(self, coords):
        return ModElem(self, self.reduce(coords))

    def zero(self):
        return ModElem(self, (ZERO,) * self.dim)

    def basis(self):
        return [self.elem([ONE if k == j else ZERO for k in range(self.dim)]) for j in range(self.dim)]

    def relation_rows(self):
        return [[Fraction(d) if k == j else ZERO for k in range(self.dim)] for j, d in enumerate(self.invariants)]

    def elements(self):
        """Every element of a finite module, in lexicographic coordinate order."""
        if self.free:
            raise ValueError("cannot enumerate an infinite module")
        for coords in product(*(range(d) for d in self.invariants)):
            yield ModElem(self, tuple(Fraction(c) for c in coords))

    def full(self):
        return Submodule.span(self, self.basis())

    def zero_submodule(self):
        return Submodule.span(self, [])

    def __str__(self):
        parts = [f"{self.ctx}/({d})" for d in self.invariants]
        if self.free:
            parts.append(f"{self.ctx}^{self.free}" if self.free > 1 else str(self.ctx))
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ModElem:
    module: FgModule
    coords: tuple

    def __add__(self, other):
        return self.module.elem([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return self.module.elem([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return self.module.elem([-a for a in self.coords])

    def __rmul__(self, r):
        r = Fraction(r)
        return self.module.elem([r * a for a in self.coords])

    def is_zero(self):
        return not any(self.coords)

    def __str__(self):
        return "[" + ", ".join(fmt_elem(x) for x in self.coords) + "]"


def _as_vector(module, g):
    if isinstance(g, ModElem):
        if g.module != module:
            raise ValueError("element belongs to a different module")
        return list(g.coords)
    return [Fraction(x) for x in g]


def _hermite_rows(rows, ncols, ctx):
    """Canonical Hermite form over R_u of the span of rational rows."""
    ech = linalg.echelon([linalg.scale_to_int(r) for r in rows], ncols)
    out = []
    pivots = []
    for row in ech:
        c = next(k for k, x in enumerate(row) if x)
        unit = ctx.unit_part(row[c])
        out.append([Fraction(x, unit) for x in row])
        pivots.append(c)
    for k, (row_k, c) in enumerate(zip(out, pivots)):
        g = row_k[c].numerator
        for i in range(k):
            x = out[i][c]
            if not x:
                continue
            coef = (x - residue(x, g)) / g
            if coef:
                out[i] = [a - coef * b for a, b in zip(out[i], row_k)]
    return tuple(tuple(r) for r in out), tuple(pivots)


class Submodule:
    """A submodule of an :class:`FgModule`, kept in canonical Hermite form."""

    def __init__(self, ambient, rows, pivots):
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def span(cls, ambient, gens):
        vecs = [_as_vector(ambient, g) for g in gens] + ambient.relation_rows()
        rows, pivots = _hermite_rows(vecs, ambient.dim, ambient.ctx)
        return cls(ambient, rows, pivots)

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.ambient == other.ambient and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def __repr__(self):
        return f"Submodule({self.ambient}, gens={[str(g) for g in self.generators()]})"

    def generators(self):
        """Non-zero canonical generators as elements of the ambient module."""
        gens = []
        for row in self.rows:
            m = self.ambient.elem(row)
            if not m.is_zero():
                gens.append(m)
        return gens

    def contains(self, m):
        vec = _as_vector(self.ambient, m)
        for row, c in zip(self.rows, self.pivots):
            if any(vec[k] for k in range(c)):
                return False
            x = vec[c]
            if x:
                g = row[c].numerator
                if x.numerator % g:
                    return False
                q = x / g
                vec = [a - q * b for a, b in zip(vec, row)]
        return not any(vec)

    __contains__ = contains

    def issubset(self, other):
        return all(other.contains(row) for row in self.rows)

    __le__ = issubset

    def __add__(self, other):
        return Submodule.span(self.ambient, list(self.rows) + list(other.rows))

    def scale(self, r):
        r = Fraction(r)
        return Submodule.span(self.ambient, [[r * x for x in row] for row in self.rows])

    def is_full(self):
        return self.quotient_info.module.is_zero

    def is_zero(self):
        return not self.generators()

    @cached_property
    def quotient_info(self):
        return present(self.rows, self.ambient.dim, self.ambient.ctx)

    def to_doc(self):
        return {"gens": [[fmt_elem(x) for x in g.coords] for g in self.generators()]}


@dataclass(frozen=True)
class Presentation:
    """Canonical form of R^n / span(rows) with coordinate changes.

    ``to_canon`` (q x n) sends a vector of R^n to canonical coordinates;
    ``lift`` (n x q) sends canonical basis vectors back to preimages.
    """

    module: FgModule
    to_canon: tuple
    lift: tuple

    def project(self, vec):
        return self.module.reduce([sum((a * b for a, b in zip(row, vec)), ZERO) for row in self.to_canon])

    def lift_vector(self, coords):
        return [sum((a * b for a, b in zip(row, coords)), ZERO) for row in self.lift]


def present(rows, n, ctx):
    """Canonical module R_u^n / span(rows)."""
    int_rows = [linalg.scale_to_int(r) for r in rows if any(r)]
    diag, v, vinv = linalg.smith(int_rows, n)
    invariants, torsion_idx = [], []
    for j, d in enumerate(diag):
        d = ctx.strip(d)
        if d > 1:
            invariants.append(d)
            torsion_idx.append(j)
    keep = torsion_idx + list(range(len(diag), n))
    to_canon = tuple(tuple(Fraction(v[i][j]) for i in range(n)) for j in keep)
    lift = tuple(tuple(Fraction(vinv[j][i]) for j in keep) for i in range(n))
    module = FgModule(ctx, tuple(invariants), n - len(diag), presentation=tuple(map(tuple, int_rows)))
    return Presentation(module, to_canon, lift)


def module_from_relations(ctx, rows, n):
    """R_u^n modulo the given relation rows, in canonical form."""
    return present([[Fraction(x) for x in r] for r in rows], n, ctx)


class ModuleMap:
    """R_u-linear map between canonical modules; ``matrix`` is codomain.dim x domain.dim."""

    def __init__(self, domain, codomain, matrix, check=True):
        self.domain = domain
        self.codomain = codomain
        self.matrix = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        if len(self.matrix) != codomain.dim or any(len(r) != domain.dim for r in self.matrix):
            raise ValueError(f"matrix shape does not match {codomain.dim} x {domain.dim}")
        if check:
            bad = self.well_definedness_failure()
            if bad is not None:
                raise ValueError(f"map is not well defined on basis vector {bad}")

    def column(self, j):
        return [row[j] for row in self.matrix]

    def well_definedness_failure(self):
        ctx = self.domain.ctx
        for j, d in enumerate(self.domain.invariants):
            img = self.codomain.elem([d * x for x in self.column(j)])
            if not img.is_zero():
                return j
        for row in self.matrix:
            if any(not ctx.contains(x) for x in row):
                return "non-ring entry"
        return None

    def apply_vector(self, vec):
        return self.codomain.reduce([sum((a * b for a, b in zip(row, vec)), ZERO) for row in self.matrix])

    def __call__(self, m):
        return ModElem(self.codomain, self.apply_vector(_as_vector(self.domain, m)))

    def image(self, sub=None):
        rows = sub.rows if sub is not None else [b.coords for b in self.domain.basis()]
        return Submodule.span(self.codomain, [self.apply_vector(r) for r in rows])

    def compose(self, inner):
        """self o inner."""
        mat = [
            [sum((self.matrix[i][k] * inner.matrix[k][j] for k in range(self.domain.dim)), ZERO)
             for j in range(inner.domain.dim)]
            for i in range(self.codomain.dim)
        ]
        return ModuleMap(inner.domain, self.codomain, mat, check=False)

    def is_zero(self):
        return all(self(b).is_zero() for b in self.domain.basis())

    def kernel(self):
        return self.preimage(self.codomain.zero_submodule())

    def preimage(self, target):
        """{x in domain : self(x) in target}."""
        pres = target.quotient_info
        q = pres.module
        n = self.domain.dim
        # composite domain -> codomain/target, as a q x n matrix
        comp = [[sum((pres.to_canon[i][k] * self.matrix[k][j] for k in range(self.codomain.dim)), ZERO)
                 for j in range(n)] for i in range(q.dim)]
        # x solves: comp @ x lies in span(d_i e_i) for the torsion coordinates of q
        stacked = [[comp[i][j] for i in range(q.dim)] for j in range(n)]
        stacked += [[Fraction(-d) if i == t else ZERO for i in range(q.dim)] for t, d in enumerate(q.invariants)]
        cols = list(zip(*stacked)) if stacked and q.dim else []
        scaled_cols = [linalg.scale_to_int(c) for c in cols]
        int_rows = [list(r) for r in zip(*scaled_cols)] if scaled_cols else [[] for _ in stacked]
        ker = linalg.left_kernel(int_rows, q.dim)
        gens = [[Fraction(x) for x in vec[:n]] for vec in ker]
        return Submodule.span(self.domain, gens)

    def to_doc(self):
        return [[fmt_elem(x) for x in row] for row in self.matrix]

    def __eq__(self, other):
        return (isinstance(other, ModuleMap) and self.domain == other.domain
                and self.codomain == other.codomain and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.matrix))


def scalar_map(module, r):
    r = Fraction(r)
    return ModuleMap(module, module, [[r if i == j else ZERO for j in range(module.dim)] for i in range(module.dim)],
                     check=False)


def projection(sub):
    """The quotient map ambient -> ambient/sub."""
    pres = sub.quotient_info
    return ModuleMap(sub.ambient, pres.module, pres.to_canon, check=False)


# ---------------------------------------------------------------------------
# primality reports

class Verdict(str, enum.Enum):
    PRIME = "Prime"
    PRIMARY = "Primary"
    NOT_PRIME = "NotPrime"
    NOT_PRIMARY = "NotPrimary"
    NOT_PROPER = "NotProper"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Witness:
    """r * m lies in S_index although m does not and r is outside the colon (or its radical)."""

    index: int
    r: Fraction
    m: ModElem

    def replay(self, sub, primary=False):
        lhs = self.r * self.m
        bound = colon(sub)
        if primary:
            bound = radical(bound)
        return sub.contains(lhs) and not sub.contains(self.m) and not bound.contains(self.r)

    def equation(self):
        show = lambda v: "[" + ", ".join(str(x) for x in v.coords) + "]"
        return f"{self.r} * {show(self.m)} = {show(self.r * self.m)} in S_{self.index}"

    def to_doc(self):
        return {"index": self.index, "r": fmt_elem(self.r), "m": [fmt_elem(x) for x in self.m.coords],
                "replay": self.equation()}


@dataclass
class PrimenessReport:
    verdict: Verdict
    ideals: dict = field(default_factory=dict)
    witness: Witness = None
    condition_trace: dict = None
    per_index: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def affirmative(self):
        return self.verdict in (Verdict.PRIME, Verdict.PRIMARY)

    def to_doc(self):
        doc = {
            "verdict": str(self.verdict),
            "ideals": {str(i): p.gen for i, p in sorted(self.ideals.items())},
            "witness": self.witness.to_doc() if self.witness else None,
            "per_index": {str(i): str(v) for i, v in sorted(self.per_index.items())},
        }
        if self.condition_trace is not None:
            doc["conditions"] = dict(self.condition_trace)
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


# ---------------------------------------------------------------------------
# operations

def smith_normal_form(rel, ctx, ncols=None):
    """Invariants, free rank and basis maps of R_u^n / rowspan(rel)."""
    n = ncols if ncols is not None else (len(rel[0]) if rel else 0)
    pres = present([[Fraction(x) for x in r] for r in rel], n, ctx)
    return pres.module.invariants, pres.module.free, pres


def hermite_reduce(sub):
    return Submodule.span(sub.ambient, sub.rows)


def membership(m, sub):
    return sub.contains(m)


def quotient(module, sub):
    if sub.ambient != module:
        raise ValueError("submodule is not contained in this module")
    return sub.quotient_info.module, projection(sub)


def colon(sub, module=None):
    """(S : M) = Ann(M/S)."""
    if module is not None and sub.ambient != module:
        raise ValueError("submodule is not contained in this module")
    q = sub.quotient_info.module
    if q.free:
        return ZERO_IDEAL
    if not q.invariants:
        return UNIT_IDEAL
    return Ideal(q.invariants[-1])


def _pullback(sub, qgens):
    pres = sub.quotient_info
    lifted = [pres.lift_vector(g) for g in qgens]
    return Submodule.span(sub.ambient, list(sub.rows) + lifted)


def colon_by_element(sub, r):
    """(S : r) = {m : r m in S}."""
    r = Fraction(r)
    q = sub.quotient_info.module
    if r == 0:
        return sub.ambient.full()
    a = r.numerator
    gens = []
    for j, d in enumerate(q.invariants):
        gens.append([Fraction(d // gcd(d, a)) if k == j else ZERO for k in range(q.dim)])
    return _pullback(sub, gens)


def annihilator_of_element(m):
    module = m.module
    r = module.rank
    if any(m.coords[r:]):
        return ZERO_IDEAL
    g = 1
    for x, d in zip(m.coords[:r], module.invariants):
        o = d // gcd(d, int(x))
        g = g * o // gcd(g, o)
    return Ideal(g)


def annihilator_of_module(module):
    return colon(module.zero_submodule())


def torsion_submodule(module):
    return Submodule.span(module, module.basis()[: module.rank])


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of prime ideals; ``includes_zero`` marks the zero ideal."""

    primes: tuple = ()
    includes_zero: bool = False

    def ideals(self):
        return ([ZERO_IDEAL] if self.includes_zero else []) + [Ideal(p) for p in self.primes]

    def contains(self, r):
        """Membership of the ring element r in the union of the listed ideals."""
        r = Fraction(r)
        if r == 0:
            return bool(self.primes) or self.includes_zero
        return any(r.numerator % p == 0 for p in self.primes)

    def is_empty(self):
        return not self.primes and not self.includes_zero

    def equals_ideal(self, ideal):
        """Whether the union of the members equals ``ideal`` as a set of ring elements."""
        if ideal.gen == 0:
            return not self.primes and self.includes_zero
        return self.primes == (ideal.gen,)

    def to_doc(self):
        return [p.gen for p in self.ideals()]

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.ideals()) + "}"


def associated_primes(module):
    primes = sorted({p for d in module.invariants for p in prime_divisors(d)})
    return PrimeSet(tuple(primes), module.free > 0)


def zero_divisors(module):
    """Z(M) as the union of its associated primes; Z(0) is empty."""
    return associated_primes(module)


def _last_torsion_witness(sub, q, index):
    pres = sub.quotient_info
    last = q.invariants[-1]
    p = prime_divisors(last)[0]
    j = q.rank - 1
    y = [Fraction(last // p) if k == j else ZERO for k in range(q.dim)]
    m = sub.ambient.elem(pres.lift_vector(y))
    return Witness(index, Fraction(p), m)


def is_prime_submodule(sub, index=0):
    q = sub.quotient_info.module
    if q.is_zero:
        return PrimenessReport(Verdict.NOT_PROPER, per_index={index: Verdict.NOT_PROPER})
    if not q.invariants:
        return PrimenessReport(Verdict.PRIME, {index: ZERO_IDEAL}, per_index={index: Verdict.PRIME})
    if q.free == 0 and is_prime(q.invariants[-1]):
        return PrimenessReport(Verdict.PRIME, {index: Ideal(q.invariants[-1])}, per_index={index: Verdict.PRIME})
    w = _last_torsion_witness(sub, q, index)
    return PrimenessReport(Verdict.NOT_PRIME, {index: colon(sub)}, witness=w, per_index={index: Verdict.NOT_PRIME})


def is_primary_submodule(sub, index=0):
    q = sub.quotient_info.module
    if q.is_zero:
        return PrimenessReport(Verdict.NOT_PROPER, per_index={index: Verdict.NOT_PROPER})
    if not q.invariants:
        return PrimenessReport(Verdict.PRIMARY, {index: ZERO_IDEAL}, per_index={index: Verdict.PRIMARY})
    if q.free == 0 and len(factor(q.invariants[-1])) == 1:
        rad = radical(Ideal(q.invariants[-1]))
        return PrimenessReport(Verdict.PRIMARY, {index: rad}, per_index={index: Verdict.PRIMARY})
    w = _last_torsion_witness(sub, q, index)
    return PrimenessReport(Verdict.NOT_PRIMARY, {index: radical(colon(sub))}, witness=w,
                           per_index={index: Verdict.NOT_PRIMARY})


def saturate(sub, p):
    """{m : t m in S for some t outside the prime p}."""
    if not is_prime_ideal(p):
        raise PNotPrime(f"{p} is not a prime ideal")
    q = sub.quotient_info.module
    gens = []
    for j, d in enumerate(q.invariants):
        keep = 1 if p.gen == 0 else p.gen ** valuation(d, p.gen)
        gens.append([Fraction(keep) if k == j else ZERO for k in range(q.dim)])
    return _pullback(sub, gens)


def intersect(s1, s2):
    if s1.ambient != s2.ambient:
        raise ValueError("submodules live in different modules")
    n = s1.ambient.dim
    rows = [list(a) + list(a) for a in s1.rows] + [list(b) + [ZERO] * n for b in s2.rows]
    ech = linalg.echelon([linalg.scale_to_int(r) for r in rows], 2 * n)
    gens = [[Fraction(x) for x in r[n:]] for r in ech if not any(r[:n])]
    return Submodule.span(s1.ambient, gens)


def image_under_scalar(sub, r):
    return sub.scale(r)


# ---------------------------------------------------------------------------
# tensor with a free module and localization


@dataclass(frozen=True)
class FreeTensor:
    """R_u^k (x) M = M^k with the canonical interleaved coordinate order.

    Coordinate j of copy c sits at ``j * k + c``; since the invariant factors
    of M already form a chain, repeating each one k times keeps the chain.
    """

    base: FgModule
    k: int
    module: FgModule

    def position(self, j, c):
        return j * self.k + c

    def embed_vector(self, vec, c):
        out = [ZERO] * self.module.dim
        for j, x in enumerate(vec):
            out[self.position(j, c)] = x
        return out

    def embed_element(self, m, c=0):
        return self.module.elem(self.embed_vector(m.coords, c))

    def embed(self, sub):
        """S (x) R^k = S^k as a submodule of M^k."""
        gens = [self.embed_vector(row, c) for row in sub.rows for c in range(self.k)]
        return Submodule.span(self.module, gens)

    def embed_map(self, other, f):
        """id_{R^k} (x) f : self.module -> other.module."""
        mat = [[ZERO] * self.module.dim for _ in range(other.module.dim)]
        for i in range(f.codomain.dim):
            for j in range(f.domain.dim):
                x = f.matrix[i][j]
                if x:
                    for c in range(self.k):
                        mat[other.position(i, c)][self.position(j, c)] = x
        return ModuleMap(self.module, other.module, mat, check=False)


def tensor_with_free(module, k):
    if k < 1:
        raise ValueError("rank of the free factor must be positive")
    inv = tuple(d for d in module.invariants for _ in range(k))
    return FreeTensor(module, k, FgModule(module.ctx, inv, module.free * k))


@dataclass(frozen=True)
class Localization:
    """Base change M -> M (x) R_{u a}; torsion coordinates made trivial are dropped."""

    base: FgModule
    a: int
    module: FgModule
    kept: tuple

    def push_vector(self, vec):
        return self.module.reduce([vec[j] for j in self.kept])

    def push_element(self, m):
        return ModElem(self.module, self.push_vector(m.coords))

    def push(self, sub):
        return Submodule.span(self.module, [self.push_vector(r) for r in sub.rows])

    def push_map(self, other, f):
        mat = [[f.matrix[i][j] for j in self.kept] for i in other.kept]
        return ModuleMap(self.module, other.module, mat, check=False)


def localize_module(module, a):
    if a < 1:
        raise ValueError("the inverted element must be a positive integer")
    ctx = module.ctx.localize(a)
    kept, inv = [], []
    for j, d in enumerate(module.invariants):
        d2 = ctx.strip(d)
        if d2 > 1:
            kept.append(j)
            inv.append(d2)
    kept += list(range(module.rank, module.dim))
    return Localization(module, a, FgModule(ctx, tuple(inv), module.free), tuple(kept))


def direct_sum_module(*modules):
    """Canonical form of a direct sum, with the presentation of block coordinates."""
    ctx = modules[0].ctx
    n = sum(m.dim for m in modules)
    rows, off = [], 0
    for m in modules:
        for j, d in enumerate(m.invariants):
            row = [ZERO] * n
            row[off + j] = Fraction(d)
            rows.append(row)
        off += m.dim
    return present(rows, n, ctx)
