"""Tests for the integer-arithmetic helpers."""

import math
from fractions import Fraction

from cuspsums.arith import (coprime_split, crt, divisors, egcd_inv, euler_phi,
                            exp_table, factorize, inverse_mod, moebius,
                            multiplicative_functions, square_part,
                            unit_circle, unit_pairs)


def test_egcd_inv_against_gcd():
    for a in range(1, 40):
        for m in range(1, 40):
            g, ainv = egcd_inv(a, m)
            assert g == math.gcd(a, m)
            if g == 1:
                assert 0 <= ainv < max(m, 1)
                assert (a * ainv - 1) % m == 0


def test_inverse_mod_matches_pow():
    for m in range(1, 60):
        for a in range(1, m + 1):
            if math.gcd(a, m) == 1:
                assert inverse_mod(a, m) == pow(a, -1, m)


def test_factorize_reconstructs():
    for n in range(1, 400):
        fac = factorize(n)
        prod = 1
        for p, e in fac:
            assert e >= 1
            prod *= p ** e
        assert prod == n
        primes = [p for p, _ in fac]
        assert primes == sorted(primes)
        for p in primes:
            assert all(p % r != 0 for r in range(2, p))


def test_phi_mu_divisors_by_sieve():
    for n in range(1, 300):
        assert euler_phi(n) == sum(1 for a in range(1, n + 1)
                                   if math.gcd(a, n) == 1)
        assert list(divisors(n)) == [d for d in range(1, n + 1) if n % d == 0]
    # Moebius: mu(n) = 0 iff a square factor, else parity of prime count;
    # checked via sum_{d | n} mu(d) = [n == 1].
    for n in range(1, 300):
        assert sum(moebius(d) for d in divisors(n)) == (1 if n == 1 else 0)
    mf = multiplicative_functions(360)
    assert mf.phi == euler_phi(360)
    assert mf.mu == 0
    assert mf.divisors == divisors(360)


def test_square_part():
    assert square_part(1) == 1
    assert square_part(12) == 2
    assert square_part(72) == 6
    for n in range(1, 200):
        k = square_part(n)
        assert n % (k * k) == 0
        assert square_part(n // (k * k)) == 1


def test_coprime_split():
    for a in range(1, 120):
        for b in range(1, 30):
            sp = coprime_split(a, b)
            assert sp.stem * sp.cotail == a
            assert math.gcd(sp.cotail, b) == 1
            # every prime of the stem divides b
            for p, _ in factorize(sp.stem):
                assert b % p == 0


def test_crt_round_trip():
    moduli = (4, 9, 25)
    M = 900
    for x in range(0, M, 7):
        residues = tuple(x % m for m in moduli)
        assert crt(residues, moduli) == x
    assert crt((1, 2), (3, 5)) == 7


def test_unit_circle_exact_points():
    assert unit_circle(Fraction(0)) == 1
    assert abs(unit_circle(Fraction(1, 2)) + 1) < 1e-15
    assert abs(unit_circle(Fraction(1, 4)) - 1j) < 1e-15
    # periodicity is exact because reduction happens on the rational
    for k in range(-5, 6):
        t = Fraction(3, 7)
        assert unit_circle(t + k) == unit_circle(t)
    # group law within floating error
    s, t = Fraction(1, 3), Fraction(2, 5)
    assert abs(unit_circle(s) * unit_circle(t) - unit_circle(s + t)) < 1e-14


def test_exp_table_matches_unit_circle():
    for c in (1, 2, 5, 12):
        table = exp_table(c)
        assert len(table) == c
        for j in range(c):
            assert table[j] == unit_circle(Fraction(j, c))


def test_unit_pairs_are_inverse_pairs():
    for c in range(1, 40):
        avec, dvec = unit_pairs(c)
        units = [a for a in range(1, c + 1) if math.gcd(a, c) == 1]
        assert list(avec) == units
        for a, d in zip(avec, dvec):
            assert (int(a) * int(d) - 1) % c == 0
