"""Exact integer, rational and root-of-unity arithmetic used by every other module.

Rational numbers are fractions.Fraction throughout; complex values are
ordinary Python complex.  e(x) denotes exp(2*pi*i*x).
"""

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

# Factorization is by trial division; inputs beyond this bound are rejected
# rather than silently slow.
FACTOR_BOUND = 2**40


def egcd_inv(a, m):
    """Return (g, ainv) with g = gcd(a, m) and ainv the least nonnegative
    inverse of a mod m when g == 1, else ainv is None."""
    assert m >= 1
    g = math.gcd(a, m)
    if g != 1:
        return g, None
    return 1, pow(a, -1, m)


def inverse_mod(a, m):
    """Least nonnegative inverse of a mod m; a must be a unit mod m."""
    assert m >= 1
    return pow(a, -1, m)


class Factorization(NamedTuple):
    factors: tuple          # sorted tuple of (prime, exponent)
    phi: int
    mu: int
    divisors: tuple         # sorted tuple of all positive divisors


def factorize(n):
    """Sorted prime-power decomposition [(p, e), ...] of n >= 1 by trial division."""
    if not 1 <= n <= FACTOR_BOUND:
        raise ValueError("factorization bound exceeded: %s" % n)
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return factors


def multiplicative_functions(n):
    """Factorization of n together with phi(n), mu(n) and the divisor list."""
    factors = factorize(n)
    phi = 1
    mu = 1
    divisors = [1]
    for p, e in factors:
        phi *= p ** (e - 1) * (p - 1)
        mu = 0 if e > 1 else -mu
        divisors = [d * p**k for d in divisors for k in range(e + 1)]
    return Factorization(tuple(factors), phi, mu, tuple(sorted(divisors)))


def euler_phi(n):
    return multiplicative_functions(n).phi


def square_part(n):
    """Largest k with k**2 dividing n >= 1."""
    k = 1
    for p, e in factorize(n):
        k *= p ** (e // 2)
    return k


def moebius(n):
    return multiplicative_functions(n).mu


def divisors(n):
    return multiplicative_functions(n).divisors


class CoprimeSplit(NamedTuple):
    stem: int               # the part of a supported on primes of b
    cotail: int             # the complementary part, coprime to b


def coprime_split(a, b):
    """Split a = stem * cotail with stem | b^infinity and gcd(cotail, b) = 1."""
    assert a >= 1 and b >= 1
    stem, cotail = 1, a
    g = math.gcd(cotail, b)
    while g > 1:
        stem *= g
        cotail //= g
        g = math.gcd(cotail, g)
    return CoprimeSplit(stem, cotail)


def crt(residues, moduli):
    """Solve x = r_i mod m_i for pairwise coprime m_i; least nonnegative x."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        assert math.gcd(m, mi) == 1
        x += m * ((r - x) * pow(m, -1, mi) % mi) if mi > 1 else 0
        m *= mi
    return x % m


def unit_circle(x):
    """e(x) = exp(2*pi*i*x) for rational x, reduced mod 1 exactly first."""
    x = Fraction(x)
    x -= math.floor(x)
    t = 2.0 * math.pi * float(x)
    return complex(math.cos(t), math.sin(t))


@lru_cache(maxsize=4096)
def exp_table(c):
    """numpy array of e(j/c) for j = 0..c-1 (entries via unit_circle, so
    a lookup at j equals unit_circle(Fraction(j, c)) exactly)."""
    return np.array([unit_circle(Fraction(j, c)) for j in range(c)])


@lru_cache(maxsize=4096)
def unit_pairs(c):
    """int64 arrays (a, a^-1 mod c) over the units a of Z/c, ascending."""
    units = [a for a in range(1, c + 1) if math.gcd(a, c) == 1]
    avec = np.array(units, dtype=np.int64)
    dvec = np.array([pow(a, -1, c) for a in units], dtype=np.int64)
    return avec, dvec
