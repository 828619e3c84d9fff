"""Exact arithmetic in R_u = Z[1/u] for squarefree u.

Elements are plain :class:`fractions.Fraction` values whose denominators only
involve primes dividing ``u``.  Every ideal of the PID ``R_u`` is principal and
is stored through its unique generator: a non-negative integer coprime to ``u``.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, isqrt

from .errors import DenominatorNotInverted, FactorCapExceeded

DEFAULT_FACTOR_CAP = 10**9

_factor_cap = contextvars.ContextVar("factor_cap", default=DEFAULT_FACTOR_CAP)


@contextmanager
def factor_cap(cap):
    """Temporarily change the largest trial divisor used by :func:`factor`."""
    if cap < 2:
        raise ValueError("factor cap must be at least 2")
    token = _factor_cap.set(cap)
    try:
        yield
    finally:
        _factor_cap.reset(token)


def factor(n, cap=None):
    """Complete factorization of ``n >= 1`` as a sorted list of (prime, exponent).

    Trial division; raises FactorCapExceeded when a cofactor would need a
    divisor above ``cap`` to be certified.
    """
    if n < 1:
        raise ValueError(f"factor expects a positive integer, got {n}")
    return list(_factor(n, _factor_cap.get() if cap is None else cap))


@lru_cache(maxsize=65536)
def _factor(n, cap):
    out = []
    m = n
    p = 2
    while p * p <= m:
        if p > cap:
            raise FactorCapExceeded(n, cap)
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def prime_divisors(n):
    return [p for p, _ in factor(abs(n))] if n else []


def is_prime(n):
    return n >= 2 and factor(n) == [(n, 1)]


def squarefree_kernel(n):
    return reduce(lambda a, b: a * b, prime_divisors(n), 1)


def valuation(n, p):
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@dataclass(frozen=True)
class RingCtx:
    """The ring Z[1/u].  Non-squarefree ``u`` is replaced by its squarefree kernel."""

    u: int = 1
    inverted_primes: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.u, int) or self.u < 1:
            raise ValueError(f"u must be a positive integer, got {self.u!r}")
        primes = tuple(prime_divisors(self.u))
        object.__setattr__(self, "u", reduce(lambda a, b: a * b, primes, 1))
        object.__setattr__(self, "inverted_primes", primes)

    def strip(self, n):
        """Remove every prime factor of u from the integer ``n`` (sign dropped)."""
        n = abs(n)
        if n == 0:
            return 0
        for p in self.inverted_primes:
            while n % p == 0:
                n //= p
        return n

    def unit_part(self, n):
        """The positive u-smooth part of the non-zero integer ``n``."""
        return abs(n) // self.strip(n)

    def is_inverted(self, den):
        return self.strip(den) == 1

    def contains(self, x):
        return self.is_inverted(Fraction(x).denominator)

    def elem(self, num, den=1):
        return canonicalize(num, den, self)

    def parse(self, text):
        x = Fraction(str(text).strip()) if not isinstance(text, (int, Fraction)) else Fraction(text)
        if not self.contains(x):
            raise DenominatorNotInverted(f"{text!r}: denominator {x.denominator} is not a unit of Z[1/{self.u}]")
        return x

    def is_unit(self, x):
        x = Fraction(x)
        return x != 0 and self.strip(x.numerator) == 1

    def ideal(self, gen):
        """Canonical ideal generated by a ring element."""
        return ideal_of(Fraction(gen), self)

    def localize(self, a):
        """The ring Z[1/(u*a)]."""
        return RingCtx(self.u * a)

    def __str__(self):
        return "Z" if self.u == 1 else f"Z[1/{self.u}]"


def canonicalize(num, den, ctx):
    if den <= 0:
        raise ValueError("denominator must be positive")
    if not ctx.is_inverted(den):
        raise DenominatorNotInverted(f"{num}/{den}: {den} is not invertible in {ctx}")
    return Fraction(num, den)


def residue(x, modulus):
    """Integer representative in [0, modulus) of ``x`` in R_u/(modulus).

    ``modulus`` must be coprime to every denominator of ``x``.
    """
    if modulus == 1:
        return 0
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator % modulus
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def fmt_elem(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class Ideal:
    """Principal ideal of R_u stored by its canonical generator."""

    gen: int

    def __post_init__(self):
        if self.gen < 0:
            raise ValueError("ideal generators are non-negative")

    @property
    def is_zero(self):
        return self.gen == 0

    @property
    def is_unit(self):
        return self.gen == 1

    def contains(self, x):
        x = Fraction(x)
        if self.gen == 0:
            return x == 0
        return x.numerator % self.gen == 0

    def issubset(self, other):
        if other.gen == 0:
            return self.gen == 0
        return self.gen % other.gen == 0

    def __str__(self):
        return f"({self.gen})"


ZERO_IDEAL = Ideal(0)
UNIT_IDEAL = Ideal(1)


def ideal_of(x, ctx):
    return Ideal(ctx.strip(Fraction(x).numerator))


def is_prime_ideal(ideal, ctx=None):
    return ideal.gen == 0 or is_prime(ideal.gen)


def radical(ideal, ctx=None):
    if ideal.gen <= 1:
        return ideal
    return Ideal(squarefree_kernel(ideal.gen))


def _lcm(a, b):
    if a == 0 or b == 0:
        return 0
    return a // gcd(a, b) * b


def ideal_intersection(ideals, ctx=None):
    ideals = list(ideals)
    if not ideals:
        raise ValueError("intersection of an empty family of ideals")
    g = reduce(_lcm, (i.gen for i in ideals))
    return Ideal(ctx.strip(g) if ctx is not None else g)


def ideal_product(a, b, ctx=None):
    g = a.gen * b.gen
    return Ideal(ctx.strip(g) if ctx is not None else g)


def ideal_sum(a, b):
    return Ideal(gcd(a.gen, b.gen))
