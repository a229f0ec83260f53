"""Tests for Dirichlet characters, Gauss sums, and truncated L-values."""

import math
from fractions import Fraction

import mpmath

from cuspsums.arith import factorize
from cuspsums.characters import (character_group, decompose_crt, gauss_sum,
                                 induce, l_truncated, principal_character,
                                 unit_group)


def test_unit_group_generates_units():
    for q in range(1, 80):
        G = unit_group(q)
        units = {a % q for a in range(1, q + 1) if math.gcd(a, q) == 1}
        generated = {1 % q}
        total = 1
        for g in G.generators:
            total *= g.order
            powers, y = [], 1
            for _ in range(g.order):
                powers.append(y % q)
                y = y * g.value % q
            generated = {x * p % q for x in generated for p in powers}
        # generator orders multiply to phi(q) and their powers span the units
        assert total == len(units)
        assert generated == units


def test_character_group_size_and_multiplicativity():
    for q in range(1, 50):
        group = character_group(q)
        assert len(group) == len([a for a in range(1, q + 1)
                                  if math.gcd(a, q) == 1])
        chi = group[len(group) // 2]
        for a in range(1, q + 1):
            for b in range(1, q + 1):
                if math.gcd(a * b, q) == 1:
                    assert abs(chi(a) * chi(b) - chi(a * b)) < 1e-12
                else:
                    assert chi(a * b) == 0


def test_principal_character_values():
    for q in (1, 2, 6, 12):
        chi = principal_character(q)
        assert chi.is_principal
        for a in range(1, q + 1):
            want = 1 if math.gcd(a, q) == 1 else 0
            assert chi(a) == want


def test_angles_are_exact_rationals():
    for q in (5, 8, 12, 16):
        for chi in character_group(q):
            for a in range(1, q + 1):
                t = chi.angle(a)
                if math.gcd(a, q) != 1:
                    assert t is None
                else:
                    assert isinstance(t, Fraction)
                    assert 0 <= t < 1


def test_orthogonality_small_moduli():
    for q in (1, 2, 3, 8, 12, 15):
        group = character_group(q)
        units = [a for a in range(1, q + 1) if math.gcd(a, q) == 1]
        for chi in group:
            s = sum(chi(a) for a in units)
            want = len(units) if chi.is_principal else 0
            assert abs(s - want) < 1e-10


def test_decompose_crt_recomposes_exactly():
    for q in (12, 45, 40):
        moduli = tuple(p ** e for p, e in factorize(q))
        for chi in character_group(q):
            parts = decompose_crt(chi, moduli)
            assert tuple(part.modulus for part in parts) == moduli
            for a in range(1, q + 1):
                if math.gcd(a, q) != 1:
                    continue
                total = sum(part.angle(a) for part in parts)
                assert (chi.angle(a) - total) % 1 == 0


def test_induce_agrees_on_units():
    for q, Q in ((3, 12), (4, 8), (5, 25), (1, 7)):
        for chi in character_group(q):
            lifted = induce(chi, Q)
            assert lifted.modulus == Q
            for a in range(1, Q + 1):
                if math.gcd(a, Q) == 1:
                    assert (lifted.angle(a) - chi.angle(a)) % 1 == 0


def test_gauss_sum_primitive_modulus():
    for q in range(1, 30):
        for chi in character_group(q):
            if chi.is_primitive():
                tau = gauss_sum(chi)
                assert abs(abs(tau) ** 2 - q) < 1e-10


def test_gauss_sum_quadratic_character():
    # the quadratic character mod 5 has Gauss sum sqrt(5)
    (chi,) = [c for c in character_group(5)
              if c.order() == 2]
    assert abs(gauss_sum(chi) - math.sqrt(5)) < 1e-12


def test_l_truncated_principal_is_zeta_with_euler_factors():
    chi = principal_character(6)
    for s in (2.5, 3.0, 4.0):
        lv = l_truncated(chi, s)
        want = complex(mpmath.zeta(s)) * (1 - 2.0 ** -s) * (1 - 3.0 ** -s)
        assert abs(lv.value - want) <= lv.truncation_bound + 1e-12
        assert lv.truncation_bound <= 1e-9


def test_l_truncated_nonprincipal():
    # L(2, chi_4) = Catalan's constant; a loose target keeps the sum short
    (chi,) = [c for c in character_group(4) if not c.is_principal]
    lv = l_truncated(chi, 2.0, target_eps=1e-6)
    assert abs(lv.value - float(mpmath.catalan)) <= lv.truncation_bound + 1e-12
    assert lv.truncation_bound <= 1e-6
