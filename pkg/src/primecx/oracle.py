"""Brute-force reference deciders.

Nothing here touches the Smith/Hermite machinery used by the fast path.  On a
finite module the sweeps enumerate every element and every scalar residue, so
answers are exact.  On infinite modules elements come from a coordinate box,
membership is decided by sympy's Hermite form, and a "no counterexample"
answer only means none was found in the box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from itertools import product
from math import gcd

import numpy as np

from .ring import Ideal, prime_divisors


@dataclass(frozen=True)
class SearchBox:
    scalar_bound: int = 12
    element_bound: int = 3
    den_exp_bound: int = 0

    def __post_init__(self):
        if self.scalar_bound < 1 or self.element_bound < 1 or self.den_exp_bound < 0:
            raise ValueError("scalar and element bounds must be >= 1, den_exp_bound >= 0")


@dataclass
class BruteVerdict:
    proper: bool
    counterexample: tuple = None  # (r, coords of m)
    exhaustive: bool = True

    @property
    def holds(self):
        return self.proper and self.counterexample is None


# ---------------------------------------------------------------------------
# finite modules: every element, encoded in mixed radix


class FiniteSweep:
    """All elements of a finite module as an integer array, plus a submodule mask."""

    def __init__(self, module, gens):
        if module.free or not module.invariants:
            raise ValueError("finite sweeps need a non-zero torsion module")
        self.module = module
        self.mods = np.array(module.invariants, dtype=np.int64)
        self.order = int(np.prod(self.mods))
        self.exponent = int(module.invariants[-1])
        strides = np.ones(len(self.mods), dtype=np.int64)
        for j in range(1, len(self.mods)):
            strides[j] = strides[j - 1] * self.mods[j - 1]
        self.strides = strides
        idx = np.arange(self.order, dtype=np.int64)
        self.elements = (idx[:, None] // strides[None, :]) % self.mods[None, :]
        self.mask = self.span_mask(gens)

    def encode(self, arr):
        return (arr % self.mods) @ self.strides

    def _int_coords(self, coords):
        out = []
        for x, d in zip(coords, self.mods):
            x = Fraction(x)
            out.append(x.numerator * pow(x.denominator, -1, int(d)) % int(d))
        return np.array(out, dtype=np.int64)

    def span_mask(self, gens):
        """Additive closure of the generators, one cyclic subgroup at a time."""
        members = np.zeros(self.order, dtype=bool)
        members[0] = True
        current = np.array([0], dtype=np.int64)
        for g in gens:
            v = self._int_coords(g)
            mult = np.arange(self.exponent, dtype=np.int64)[:, None] * v[None, :]
            step = self.encode(mult)
            cur_el = (current[:, None] // self.strides[None, :]) % self.mods[None, :]
            st_el = (step[:, None] // self.strides[None, :]) % self.mods[None, :]
            combo = self.encode((cur_el[:, None, :] + st_el[None, :, :]).reshape(-1, len(self.mods)))
            current = np.unique(combo)
        members[current] = True
        return members

    @property
    def images(self):
        """images[r, i] is the code of r * m_i, for r = 0 .. exponent."""
        return _scalar_images(self.module)

    @cached_property
    def table(self):
        """table[r, i]: r * m_i lies in S."""
        return self.mask[self.images]

    def scaled_in(self, r, mask=None):
        """Boolean per element: r * m lies in the mask."""
        r = r % self.exponent
        if mask is None:
            return self.table[r]
        return mask[self.images[r]]

    def kills_module(self, r, mask=None):
        return bool(self.scaled_in(r, mask).all())

    @cached_property
    def colon_gen(self):
        # the r with r M inside S form an ideal, so the least positive one generates it
        return int(np.argmax(self.table[1:].all(axis=1))) + 1

    def annihilators(self):
        """Least positive r with r m_i in S, per element."""
        return np.argmax(self.table[1:], axis=0) + 1

    @cached_property
    def _radical_flags(self):
        killers = self.table.all(axis=1)
        return [any(killers[pow(r, k, self.exponent)] for k in range(1, 9)) for r in range(self.exponent)]

    def in_radical(self, r):
        return self._radical_flags[r % self.exponent]

    def coords(self, i):
        return tuple(int(x) for x in self.elements[i])


@lru_cache(maxsize=32)
def _cached_sweep(module, gens):
    return FiniteSweep(module, list(gens))


@lru_cache(maxsize=8)
def _scalar_images(module):
    sw = FiniteSweep(module, [])
    rs = np.arange(sw.exponent + 1, dtype=np.int64)
    return sw.encode(rs[:, None, None] * sw.elements[None, :, :])


def _sweep(sub, gens=None):
    gens = sub.generators() if gens is None else gens
    return _cached_sweep(sub.ambient, tuple(tuple(g.coords) if hasattr(g, "coords") else tuple(g) for g in gens))


def brute_span_mask(module, gens):
    return FiniteSweep(module, [g.coords if hasattr(g, "coords") else g for g in gens]).mask


def _finite_counterexample(sw, radical):
    outside = ~sw.mask
    if not outside.any():
        return BruteVerdict(False)
    for r in range(1, sw.exponent):
        excluded = sw.in_radical(r) if radical else (r % sw.colon_gen == 0)
        if excluded:
            continue
        hits = np.nonzero(sw.scaled_in(r) & outside)[0]
        if hits.size:
            return BruteVerdict(True, (r, sw.coords(int(hits[0]))))
    return BruteVerdict(True)


# ---------------------------------------------------------------------------
# infinite modules: lattice membership through sympy


class LatticeMembership:
    """Membership in a submodule of R_u^n / relations, via sympy's Hermite form."""

    def __init__(self, sub, gens=None):
        import sympy
        from sympy.matrices.normalforms import hermite_normal_form

        self.sympy = sympy
        m = sub.ambient
        self.primes = m.ctx.inverted_primes
        rows = [list(g.coords if hasattr(g, "coords") else g) for g in (sub.generators() if gens is None else gens)]
        for j, d in enumerate(m.invariants):
            rows.append([d if k == j else 0 for k in range(m.dim)])
        ints = []
        for r in rows:
            den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in r), 1)
            ints.append([int(Fraction(x) * den) for x in r])
        ints = [r for r in ints if any(r)]
        self.dim = m.dim
        if ints:
            self.basis = hermite_normal_form(sympy.Matrix(ints).T)
        else:
            self.basis = None

    def _u_smooth(self, den):
        for p in self.primes:
            while den % p == 0:
                den //= p
        return den == 1

    def contains(self, coords):
        sp = self.sympy
        vec = sp.Matrix([sp.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in coords])
        if all(x == 0 for x in vec):
            return True
        if self.basis is None or self.basis.cols == 0:
            return False
        try:
            sol, params = self.basis.gauss_jordan_solve(vec)
        except ValueError:
            return False
        if params.shape[0]:
            sol = sol.subs({p: 0 for p in params})
        return all(self._u_smooth(int(sp.fraction(x)[1])) for x in sol)


def _box_scalars(ctx, box):
    out = list(range(1, box.scalar_bound + 1))
    for p in ctx.inverted_primes:
        for e in range(1, box.den_exp_bound + 1):
            out += [Fraction(r, p ** e) for r in range(1, box.scalar_bound + 1)]
    return out


def _box_elements(module, box):
    b = box.element_bound
    ranges = [range(min(d, 2 * b + 1)) for d in module.invariants]
    ranges += [range(-b, b + 1)] * module.free
    boxed = sorted(product(*ranges), key=lambda c: (sum(abs(x) for x in c), [(abs(x), x < 0) for x in c]))
    for coords in boxed:
        yield tuple(Fraction(c) for c in coords)


def _scale(module, r, coords):
    return tuple(module.reduce([Fraction(r) * x for x in coords]))


def _infinite_colon(sub, member, box):
    m = sub.ambient
    good = [r for r in range(1, box.scalar_bound + 1)
            if all(member.contains(_scale(m, r, e.coords)) for e in m.basis())]
    return Ideal(reduce(gcd, good)) if good else Ideal(0)


def _infinite_counterexample(sub, box, radical, gens=None):
    m = sub.ambient
    member = LatticeMembership(sub, gens)
    if all(member.contains(e.coords) for e in m.basis()):
        return BruteVerdict(False, exhaustive=False)
    colon_ideal = _infinite_colon(sub, member, box)
    elems = [c for c in _box_elements(m, box) if not member.contains(c)]
    for r in _box_scalars(m.ctx, box):
        num = Fraction(r).numerator
        if radical:
            excluded = colon_ideal.gen != 0 and any(pow(num, k) % colon_ideal.gen == 0 for k in range(1, 9))
        else:
            excluded = colon_ideal.contains(num)
        if excluded:
            continue
        for c in elems:
            if member.contains(_scale(m, r, c)):
                return BruteVerdict(True, (r, c), exhaustive=False)
    return BruteVerdict(True, exhaustive=False)


# ---------------------------------------------------------------------------
# public sweeps


def brute_is_prime_submodule(sub, box=SearchBox(), gens=None):
    if sub.ambient.is_finite and sub.ambient.invariants:
        return _finite_counterexample(_sweep(sub, gens), radical=False)
    if sub.ambient.dim == 0:
        return BruteVerdict(False)
    return _infinite_counterexample(sub, box, radical=False, gens=gens)


def brute_is_primary_submodule(sub, box=SearchBox(), gens=None):
    if sub.ambient.is_finite and sub.ambient.invariants:
        return _finite_counterexample(_sweep(sub, gens), radical=True)
    if sub.ambient.dim == 0:
        return BruteVerdict(False)
    return _infinite_counterexample(sub, box, radical=True, gens=gens)


def brute_colon(sub, box=SearchBox(), gens=None):
    """gcd of the swept r with r M inside S (exact for finite M)."""
    if sub.ambient.is_finite and sub.ambient.invariants:
        return Ideal(_sweep(sub, gens).colon_gen)
    if sub.ambient.dim == 0:
        return Ideal(1)
    return _infinite_colon(sub, LatticeMembership(sub, gens), box)


def brute_z(module, box=SearchBox()):
    """Zero divisors r in 0..scalar_bound: r m = 0 for some non-zero m (finite modules)."""
    if module.dim == 0:
        return set()
    sw = FiniteSweep(module, [])
    nonzero = ~sw.mask
    return {r for r in range(box.scalar_bound + 1) if (sw.scaled_in(r) & nonzero).any()}


def brute_quotient_z(sub, box=SearchBox(), gens=None):
    """Zero divisors on M/S: r m in S for some m outside S."""
    sw = _sweep(sub, gens)
    outside = ~sw.mask
    return {r for r in range(box.scalar_bound + 1) if (sw.scaled_in(r) & outside).any()}


def brute_ass(sub, gens=None):
    """Primes occurring as annihilators of elements of M/S (finite M)."""
    sw = _sweep(sub, gens)
    anns = sw.annihilators()[~sw.mask]
    return sorted({int(a) for a in np.unique(anns) if len(prime_divisors(int(a))) == 1 and int(a) in prime_divisors(int(a))})


def brute_saturate_mask(sub, p, gens=None):
    """Mask of m with t m in S for some t outside p (finite M)."""
    sw = _sweep(sub, gens)
    ts = [t for t in range(1, sw.exponent + 1) if not (p.gen and t % p.gen == 0)]
    return sw.table[[t % sw.exponent for t in ts]].any(axis=0)


def submodule_mask(sub):
    """Fast-path membership of every element of a finite ambient, for comparison."""
    sw = FiniteSweep(sub.ambient, [])
    m = sub.ambient
    return np.array([sub.contains(m.elem([int(x) for x in sw.elements[i]])) for i in range(sw.order)])


def brute_saturate(sub, p, box=SearchBox(), gens=None):
    """Span of the swept saturation; for finite M this is the exact saturation."""
    from .modules import Submodule

    m = sub.ambient
    if m.is_finite and m.invariants:
        sw = _sweep(sub, gens)
        mask = brute_saturate_mask(sub, p, gens)
        return Submodule.span(m, [m.elem([int(x) for x in sw.elements[i]]) for i in np.nonzero(mask)[0]])
    member = LatticeMembership(sub, gens)
    found = []
    for c in _box_elements(m, box):
        for t in range(1, box.scalar_bound + 1):
            if p.gen and t % p.gen == 0:
                continue
            if member.contains(_scale(m, t, c)):
                found.append(m.elem(c))
                break
    return Submodule.span(m, found)


# ---------------------------------------------------------------------------
# Čech components over Z


def _cech_values(u, box):
    primes = prime_divisors(u) if u > 1 else []
    dens = {1}
    for p in primes:
        dens |= {d * p ** e for d in list(dens) for e in range(1, box.den_exp_bound + 1)}
    b = box.element_bound
    return sorted({Fraction(n, d) for n in range(-b, b + 1) for d in dens})


def brute_cech_colon(part, component, box=SearchBox(20, 1, 5)):
    """gcd of r <= scalar_bound with r * (1/u_j^e) inside every summand ideal."""
    good = []
    for r in range(1, box.scalar_bound + 1):
        ok = True
        for j, u in enumerate(component.summands):
            for e in range(box.den_exp_bound + 1):
                vec = [Fraction(0)] * component.dim
                vec[j] = Fraction(r, u ** e)
                if not part.contains(vec, component):
                    ok = False
        if ok:
            good.append(r)
    return Ideal(reduce(gcd, good)) if good else Ideal(0)


def brute_cech_part(part, component, box=SearchBox(40, 40, 3), radical=False):
    """Definitional sweep for one Čech degree over Z.

    Elements m have a single non-zero summand with numerator up to
    element_bound, or small entries in every summand.  A vector lies in the
    diagonal part iff each coordinate lies in its summand ideal, so membership
    of r m is read off per-summand tables of the distinct coordinate values.
    """
    if part.is_full():
        return BruteVerdict(False, exhaustive=False)
    colon_ideal = brute_cech_colon(part, component, SearchBox(box.scalar_bound, 1, box.den_exp_bound))
    dim = component.dim
    elems = []
    for j, u in enumerate(component.summands):
        for x in _cech_values(u, box):
            vec = [Fraction(0)] * dim
            vec[j] = x
            elems.append(tuple(vec))
    small = SearchBox(2, 2, min(1, box.den_exp_bound))
    elems += list(product(*[_cech_values(u, small) for u in component.summands]))
    elems = [v for v in elems if not part.contains(v, component)]
    if not elems:
        return BruteVerdict(True, exhaustive=False)
    values = [sorted({v[j] for v in elems}) for j in range(dim)]
    lookup = [{x: k for k, x in enumerate(vals)} for vals in values]
    index = np.array([[lookup[j][v[j]] for j in range(dim)] for v in elems], dtype=np.int64)

    def coordinate_ok(j, r):
        unit = [Fraction(0)] * dim
        out = np.empty(len(values[j]), dtype=bool)
        for k, x in enumerate(values[j]):
            unit[j] = r * x
            out[k] = part.contains(unit, component)
        return out

    for r in range(1, box.scalar_bound + 1):
        if radical:
            if colon_ideal.gen and any(pow(r, k) % colon_ideal.gen == 0 for k in range(1, 9)):
                continue
        elif colon_ideal.contains(r):
            continue
        hit = np.ones(len(elems), dtype=bool)
        for j in range(dim):
            hit &= coordinate_ok(j, r)[index[:, j]]
        if hit.any():
            return BruteVerdict(True, (r, elems[int(np.argmax(hit))]), exhaustive=False)
    return BruteVerdict(True, exhaustive=False)
