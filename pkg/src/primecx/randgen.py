"""Seeded random modules, complexes and subcomplexes for property trials."""

from __future__ import annotations

import random
from fractions import Fraction

from .complexes import Complex, Subcomplex, saturate_subcomplex, scale_by_ideal, subcomplex_from_generators, torsion_subcomplex
from .modules import ZERO, FgModule, ModuleMap, Submodule, colon_by_element, intersect
from .ring import Ideal, RingCtx, is_prime

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def trial_rng(name, seed, trial):
    return random.Random(f"{name}/{seed}/{trial}")


def random_ctx(rng, us=(1, 6, 10)):
    return RingCtx(rng.choice(us))


def random_invariants(rng, ctx, max_inv=60, max_len=2):
    out = []
    for _ in range(rng.randint(0, max_len)):
        base = out[-1] if out else 1
        choices = [d for d in range(base * 2 if out else 2, max_inv + 1)
                   if d % base == 0 and ctx.strip(d) == d]
        if not choices:
            break
        out.append(rng.choice(choices))
    return tuple(out)


def random_module(rng, ctx, max_inv=60, max_torsion=2, max_free=2, max_dim=3):
    while True:
        inv = random_invariants(rng, ctx, max_inv, max_torsion)
        free = rng.randint(0, max_free)
        if 0 < len(inv) + free <= max_dim:
            return FgModule(ctx, inv, free)


def random_finite_module(rng, ctx, max_order=200, max_torsion=3):
    while True:
        inv = random_invariants(rng, ctx, max_order, max_torsion)
        order = 1
        for d in inv:
            order *= d
        if inv and order <= max_order:
            return FgModule(ctx, inv, 0)


def random_scalar(rng, ctx, bound=5):
    r = Fraction(rng.randint(-bound, bound))
    if ctx.inverted_primes and rng.random() < 0.2:
        r /= rng.choice(ctx.inverted_primes)
    return r


def random_element_of(rng, sub, bound=3):
    """Random R_u-combination of the canonical generators of ``sub``."""
    gens = sub.generators()
    ctx = sub.ambient.ctx
    coords = [ZERO] * sub.ambient.dim
    for g in gens:
        c = random_scalar(rng, ctx, bound)
        coords = [a + c * b for a, b in zip(coords, g.coords)]
    return sub.ambient.elem(coords)


def random_element(rng, module, bound=4):
    return random_element_of(rng, module.full(), bound)


def random_map(rng, domain, codomain, inside=None, zero_prob=0.25):
    """Random well-defined map whose image lies in ``inside`` (default: everything)."""
    if inside is None:
        inside = codomain.full()
    if rng.random() < zero_prob:
        return ModuleMap(domain, codomain, [[ZERO] * domain.dim for _ in range(codomain.dim)], check=False)
    cols = []
    for j in range(domain.dim):
        d = domain.modulus(j)
        allowed = inside if d == 0 else intersect(inside, colon_by_element(codomain.zero_submodule(), d))
        cols.append(random_element_of(rng, allowed).coords)
    mat = [[cols[j][i] for j in range(domain.dim)] for i in range(codomain.dim)]
    return ModuleMap(domain, codomain, mat)


def random_complex(rng, ctx=None, max_len=4, **module_kw):
    ctx = ctx or random_ctx(rng)
    length = rng.randint(1, max_len)
    mods = [random_module(rng, ctx, **module_kw) for _ in range(length)]
    diffs = []
    prev = None
    for k in range(1, length):
        inside = prev.kernel() if prev is not None else None
        d = random_map(rng, mods[k], mods[k - 1], inside)
        diffs.append(d)
        prev = d
    lo = rng.randint(-1, 1)
    return Complex(ctx, lo, mods, diffs)


def random_torsion_free_complex(rng, ctx=None, max_len=3):
    ctx = ctx or random_ctx(rng)
    return random_complex(rng, ctx, max_len, max_torsion=0, max_free=3, max_dim=3)


def random_generated_subcomplex(rng, cx, max_gens=2):
    gens = {}
    for i in cx.indices:
        m = cx.module(i)
        if m.dim:
            gens[i] = [random_element(rng, m) for _ in range(rng.randint(0, max_gens))]
    return subcomplex_from_generators(cx, gens)


def random_subcomplex(rng, cx):
    """A random subcomplex drawn from a mix of constructions."""
    kind = rng.randrange(5)
    base = random_generated_subcomplex(rng, cx)
    if kind == 0:
        return base
    if kind == 1:
        p = rng.choice([p for p in SMALL_PRIMES if cx.ctx.strip(p) == p])
        return base + scale_by_ideal(cx, Ideal(p))
    if kind == 2:
        return base + torsion_subcomplex(cx)
    if kind == 3:
        p = Ideal(rng.choice((0,) + tuple(p for p in SMALL_PRIMES if cx.ctx.strip(p) == p)))
        return saturate_subcomplex(base, p).subcomplex
    r = rng.choice([2, 3, 4, 5, 6, 9])
    return base + scale_by_ideal(cx, Ideal(cx.ctx.strip(r)))


def random_proper_subcomplex(rng, cx, tries=20):
    for _ in range(tries):
        s = random_subcomplex(rng, cx)
        if s.proper:
            return s
    return cx.zero() if any(m.dim for m in cx.modules) else None


def random_complex_with_proper(rng, us=(1, 6, 10), max_len=4):
    while True:
        cx = random_complex(rng, random_ctx(rng, us), max_len)
        s = random_proper_subcomplex(rng, cx)
        if s is not None and s.proper:
            return cx, s


def largest_with_part(cx, j, sj):
    """Largest subcomplex whose j-th part is ``sj``: C elsewhere, d^{-1}(S_j) at j+1."""
    parts = []
    for i, m in zip(cx.indices, cx.modules):
        if i == j:
            parts.append(sj)
        elif i == j + 1:
            parts.append(cx.diff(i).preimage(sj))
        else:
            parts.append(m.full())
    return Subcomplex(cx, parts, check=False)


def random_avoidance_family(rng, cx, s, n):
    """n random subcomplexes with intersection inside S.

    For each proper index j of S one member, chosen at random, is cut down to
    the largest subcomplex with j-th part inside S_j.
    """
    ts = [random_subcomplex(rng, cx) + s if rng.random() < 0.5 else random_subcomplex(rng, cx) for _ in range(n)]
    for j in s.proper:
        k = rng.randrange(n)
        ts[k] = ts[k] & largest_with_part(cx, j, s.part(j))
    return ts


def random_prime_subcomplex(rng, cx, tries=30):
    from .complexes import is_prime_subcomplex
    from .modules import Verdict
    for _ in range(tries):
        s = random_subcomplex(rng, cx)
        if s.proper and is_prime_subcomplex(s).verdict == Verdict.PRIME:
            return s
    return None


def random_prime(rng, ctx, include_zero=True):
    choices = [p for p in SMALL_PRIMES if ctx.strip(p) == p]
    if include_zero:
        choices = [0] + choices
    return Ideal(rng.choice(choices))


def direct_sum_complex(a, b):
    """Blockwise direct sum of two complexes on the same window."""
    from .modules import direct_sum_module
    if a.lo != b.lo or a.hi != b.hi:
        raise ValueError("windows differ")
    mods, maps = [], []
    for ma, mb in zip(a.modules, b.modules):
        if ma.invariants or mb.invariants:
            raise ValueError("direct sums are built for torsion-free complexes only")
        mods.append(FgModule(a.ctx, (), ma.free + mb.free))
    for k, (da, db) in enumerate(zip(a.diffs, b.diffs)):
        dom, cod = mods[k + 1], mods[k]
        mat = [[ZERO] * dom.dim for _ in range(cod.dim)]
        for i in range(da.codomain.dim):
            for j in range(da.domain.dim):
                mat[i][j] = da.matrix[i][j]
        for i in range(db.codomain.dim):
            for j in range(db.domain.dim):
                mat[da.codomain.dim + i][da.domain.dim + j] = db.matrix[i][j]
        maps.append(ModuleMap(dom, cod, mat))
    cx = Complex(a.ctx, a.lo, mods, maps)
    first = Subcomplex(cx, [Submodule.span(m, m.basis()[: ma.dim]) for m, ma in zip(mods, a.modules)])
    return cx, first
