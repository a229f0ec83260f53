"""Dirichlet character groups with exact values.

A character mod q is stored as an exponent vector over a fixed generator
basis of (Z/q)*: the group is a product of cyclic blocks, one per odd
prime power (smallest primitive root) and the blocks {-1, 5} for 2^k with
k >= 3 (generator 3 for k = 2).  Character values are exact rational
angles fed to unit_circle, so products, conjugates and orthogonality hold
exactly.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .arith import crt, euler_phi, factorize, unit_circle


def _smallest_primitive_root(p, e):
    """Smallest primitive root modulo p**e, p an odd prime."""
    pe = p**e
    order = pe // p * (p - 1)
    prime_divs = [ell for ell, _ in factorize(order)]
    for g in range(2, pe):
        if math.gcd(g, p) != 1:
            continue
        if all(pow(g, order // ell, pe) != 1 for ell in prime_divs):
            return g
    raise AssertionError("no primitive root mod %d^%d" % (p, e))


class _Generator(NamedTuple):
    value: int              # generator lifted to (Z/q)*, congruent to 1 off its block
    order: int
    block: int              # the prime power it generates (a factor of q)


class UnitGroup:
    """(Z/q)* with a fixed generator basis and a full discrete-log table."""

    def __init__(self, q):
        assert q >= 1
        self.modulus = q
        gens = []
        for p, e in factorize(q):
            pe = p**e
            rest = q // pe
            if p == 2:
                if e == 1:
                    continue
                local = [(3, 2)] if e == 2 else [(pe - 1, 2), (5, 2 ** (e - 2))]
            else:
                local = [(_smallest_primitive_root(p, e), pe // p * (p - 1))]
            for g, order in local:
                gens.append(_Generator(crt([g, 1], [pe, rest]), order, pe))
        self.generators = tuple(gens)
        self.orders = tuple(g.order for g in gens)
        table = {1 % q: ()}
        for g in gens:
            step = {}
            val = 1
            for e in range(g.order):
                for n, exps in table.items():
                    step[n * val % q] = exps + (e,)
                val = val * g.value % q
            table = step
        self._log = table

    def log(self, n):
        """Exponent vector of n over the basis, or None when gcd(n, q) > 1."""
        return self._log.get(n % self.modulus)

    def units(self):
        return sorted(self._log)


@lru_cache(maxsize=None)
def unit_group(q):
    return UnitGroup(q)


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod q determined by its exponents against unit_group(q)."""

    modulus: int
    exponents: tuple

    def __post_init__(self):
        orders = unit_group(self.modulus).orders
        assert len(self.exponents) == len(orders)
        assert all(0 <= e < o for e, o in zip(self.exponents, orders))

    def angle(self, n):
        """Exact rational t with chi(n) = e(t), or None when gcd(n, q) > 1."""
        G = unit_group(self.modulus)
        exps = G.log(n)
        if exps is None:
            return None
        t = sum(Fraction(a * b, o) for a, b, o in zip(self.exponents, exps, G.orders))
        return t % 1

    def __call__(self, n):
        t = self.angle(n)
        return 0j if t is None else unit_circle(t)

    def __mul__(self, other):
        assert self.modulus == other.modulus
        orders = unit_group(self.modulus).orders
        exps = tuple((a + b) % o for a, b, o in zip(self.exponents, other.exponents, orders))
        return DirichletCharacter(self.modulus, exps)

    def conjugate(self):
        orders = unit_group(self.modulus).orders
        return DirichletCharacter(self.modulus, tuple((-e) % o for e, o in zip(self.exponents, orders)))

    @property
    def is_principal(self):
        return all(e == 0 for e in self.exponents)

    @property
    def is_even(self):
        return self.angle(-1) == 0

    def order(self):
        orders = unit_group(self.modulus).orders
        result = 1
        for e, o in zip(self.exponents, orders):
            if e:
                result = math.lcm(result, o // math.gcd(e, o))
        return result

    def is_primitive(self):
        """True when no character of strictly smaller modulus induces chi."""
        q = self.modulus
        if q == 1:
            return True
        for p, _ in factorize(q):
            # chi factors through q/p iff it is trivial on units = 1 mod q/p
            sub = q // p
            if all(self.angle(n) == 0
                   for n in range(1, q + 1, sub) if math.gcd(n, q) == 1):
                return False
        return True

    def value_table(self):
        """chi(0), ..., chi(q-1) as a complex numpy array (0 on non-units)."""
        q = self.modulus
        out = np.zeros(q, dtype=complex)
        for n in unit_group(q).units():
            out[n] = self(n)
        return out

    def describe(self):
        G = unit_group(self.modulus)
        return {
            "modulus": self.modulus,
            "exponents": list(self.exponents),
            "generators": [{"value": g.value, "order": g.order, "block": g.block}
                           for g in G.generators],
        }


def principal_character(q):
    return DirichletCharacter(q, tuple(0 for _ in unit_group(q).orders))


def character_group(q):
    """All phi(q) characters mod q, principal first, in lexicographic
    exponent order."""
    orders = unit_group(q).orders
    chars = []
    exps = [0] * len(orders)
    while True:
        chars.append(DirichletCharacter(q, tuple(exps)))
        for i in reversed(range(len(orders))):
            exps[i] += 1
            if exps[i] < orders[i]:
                break
            exps[i] = 0
        else:
            break
    assert len(chars) == euler_phi(q)
    return chars


def decompose_crt(chi, moduli):
    """Factor chi into characters of the given pairwise-coprime moduli
    (product equal to the modulus of chi)."""
    q = chi.modulus
    prod = math.prod(moduli)
    if prod != q:
        raise ValueError("moduli multiply to %d, expected %d" % (prod, q))
    for i, a in enumerate(moduli):
        for b in moduli[i + 1:]:
            if math.gcd(a, b) != 1:
                raise ValueError("moduli not pairwise coprime")
    parts = []
    for m in moduli:
        G = unit_group(m)
        exps = []
        for g in G.generators:
            lift = crt([g.value, 1], [m, q // m])
            t = chi.angle(lift)
            e = t * g.order
            assert e.denominator == 1, "component angle not compatible with block order"
            exps.append(int(e) % g.order)
        parts.append(DirichletCharacter(m, tuple(exps)))
    return parts


def induce(chi, modulus):
    """The character mod `modulus` agreeing with chi on units; requires the
    modulus of chi to divide `modulus`."""
    q = chi.modulus
    assert modulus % q == 0
    G = unit_group(modulus)
    exps = []
    for g in G.generators:
        t = chi.angle(g.value)
        e = t * g.order
        assert e.denominator == 1, "induced exponent must be integral"
        exps.append(int(e) % g.order)
    return DirichletCharacter(modulus, tuple(exps))


def gauss_sum(chi):
    """tau(chi) = sum over a mod q of chi(a) e(a/q), by direct summation."""
    q = chi.modulus
    total = 0j
    for a in unit_group(q).units():
        total += unit_circle(chi.angle(a) + Fraction(a, q))
    return total


class LValue(NamedTuple):
    value: complex
    truncation_bound: float
    terms_used: int


_L_CACHE = {}


def l_truncated(chi, s, target_eps=1e-10):
    """Dirichlet L(s, chi) as a finite sum with an integral-test tail bound.

    Requires Re(s) > 1.  The tail beyond T terms is at most
    T^(1-sigma)/(sigma-1), and T is chosen to push that below target_eps.
    """
    s = complex(s)
    sigma = s.real
    if sigma <= 1:
        raise ValueError("l_truncated needs Re(s) > 1")
    key = (chi.modulus, chi.exponents, s, target_eps)
    if key in _L_CACHE:
        return _L_CACHE[key]
    T = max(2, math.ceil((target_eps * (sigma - 1)) ** (-1.0 / (sigma - 1))))
    bound = T ** (1 - sigma) / (sigma - 1)
    table = chi.value_table()
    total = 0j
    chunk = 1 << 20
    for start in range(1, T + 1, chunk):
        ns = np.arange(start, min(start + chunk, T + 1), dtype=np.int64)
        vals = table[ns % chi.modulus]
        total += np.sum(vals * np.exp(-s * np.log(ns)))
    result = LValue(complex(total), float(bound), T)
    _L_CACHE[key] = result
    return result
