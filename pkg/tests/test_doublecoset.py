"""Tests for double-coset enumeration and the oracle evaluators."""

import math

from cuspsums.characters import character_group, principal_character
from cuspsums.cusps import scaling_atkin_lehner_raw, scaling_general_raw
from cuspsums.doublecoset import (al_reps, canonical_key, conjugate_to_group,
                                  mixed_reps, modulus_set, oracle_al,
                                  oracle_mixed, sweep_double_coset)
from cuspsums.eisenstein import eisenstein_config, phi_direct
from cuspsums.kloosterman import classical

AL_CONFIGS = ((1, 1, 1, 1, 1), (2, 3, 1, 1, 6), (1, 1, 2, 3, 6),
              (3, 1, 2, 1, 6), (3, 1, 1, 4, 12), (4, 3, 1, 1, 12),
              (1, 1, 4, 3, 12))


def test_al_reps_conjugate_into_group():
    for p, q, u, v, N in AL_CONFIGS:
        assert p * q * u * v == N
        sa = scaling_atkin_lehner_raw(N, p * u)
        sb = scaling_atkin_lehner_raw(N, p * v)
        for z in range(1, 7):
            for rep in al_reps(p, q, u, v, z):
                assert rep.surd == u * v
                assert rep.stored[2] == z * p * q * u * v
                a, b, c, d = conjugate_to_group(sa, rep, sb)
                assert a * d - b * c == 1
                assert c % N == 0


def test_al_reps_distinct_cosets():
    for p, q, u, v, N in AL_CONFIGS:
        for z in range(1, 7):
            keys = [canonical_key(r.stored, r.surd)
                    for r in al_reps(p, q, u, v, z)]
            assert len(keys) == len(set(keys))


def test_al_reps_complete_against_sweep():
    # every double coset met by a bounded sweep of Gamma0(N) appears in the
    # enumerated representatives for the z its lower-left entry dictates
    for p, q, u, v, N in AL_CONFIGS:
        sa = scaling_atkin_lehner_raw(N, p * u)
        sb = scaling_atkin_lehner_raw(N, p * v)
        swept = sweep_double_coset(sa, sb, N, 30)
        uv = u * v
        k = math.isqrt(uv // math.gcd(uv, _squarefree_part(uv)))
        by_z = {}
        for key in swept:
            surd0, c_stored, _, _ = key
            assert surd0 == _squarefree_part(uv)
            true_c_sq = c_stored * c_stored / surd0
            z_sq = true_c_sq / (p * q) ** 2 / uv
            z = round(float(z_sq) ** 0.5)
            assert z * z == z_sq, "swept modulus is not an allowed one"
            assert math.gcd(z * p * q, uv) == 1
            by_z.setdefault(z, set()).add(key)
        for z, keys in by_z.items():
            have = {canonical_key(r.stored, r.surd)
                    for r in al_reps(p, q, u, v, z)}
            assert keys <= have


def _squarefree_part(n):
    k = 1
    while (k + 1) ** 2 <= n:
        k += 1
        while k * k <= n and n % (k * k) == 0:
            n //= k * k
    return n


def test_translate_invariance_of_canonical_keys():
    # left/right integer translations do not change the double coset
    for p, q, u, v, N in AL_CONFIGS[:4]:
        for z in (1, 2, 3):
            for rep in al_reps(p, q, u, v, z):
                a, b, c, d = rep.stored
                key = canonical_key(rep.stored, rep.surd)
                for k in (-2, 1, 3):
                    for j in (-1, 2):
                        shifted = (a + k * c, b + k * d + j * (a + k * c),
                                   c, d + j * c)
                        assert canonical_key(shifted, rep.surd) == key
                assert canonical_key((-a, -b, -c, -d), rep.surd) == key


def test_modulus_sets():
    ms = modulus_set("al", p=2, q=3, u=1, v=1)
    assert ms.members(20) == [6, 12, 18]
    ms = modulus_set("al", p=1, q=1, u=4, v=3)
    assert ms.members(8) == [1, 5, 7]
    assert ms.surd == 12
    for c in range(1, 30):
        ms2 = modulus_set("al", p=2, q=1, u=3, v=1)
        assert ms2.contains(c) == (c % 2 == 0 and math.gcd(c, 3) == 1)
    ms = modulus_set("inf_inf", N=6)
    assert ms.members(20) == [6, 12, 18]
    ms = modulus_set("mixed", N=12, r=3, w=2)
    assert ms.members(7) == [1, 5, 7]
    assert ms.surd == 12


def test_oracle_al_classical_limit():
    # N = 1: the double-coset sum is the classical Kloosterman sum
    chi = principal_character(1)
    for m in (-1, 0, 1, 2):
        for n in (0, 1, 3):
            for c in range(1, 12):
                got = oracle_al(1, 1, 1, 1, m, n, c, chi)
                assert abs(got - classical(m, n, c)) < 1e-10


def test_oracle_al_zero_off_allowed_moduli():
    chi = principal_character(6)
    assert oracle_al(2, 3, 1, 1, 1, 1, 5, chi) == 0j
    chi12 = principal_character(12)
    # c sharing a factor with uv is not allowed
    assert oracle_al(1, 1, 4, 3, 1, 1, 6, chi12) == 0j


def test_oracle_al_rejects_bad_character():
    chi = character_group(5)[1]  # order 4, odd
    try:
        oracle_al(1, 1, 5, 1, 1, 1, 1, chi)
        assert False, "odd character must be rejected"
    except ValueError:
        pass
    try:
        oracle_al(1, 1, 2, 3, 1, 1, 1, chi)
        assert False, "wrong modulus must be rejected"
    except ValueError:
        pass


def test_mixed_reps_conjugate_into_group():
    for N, r, w in ((12, 3, 2), (6, 2, 3), (9, 9, 3), (8, 8, 4), (4, 4, 2)):
        sw = scaling_general_raw(N, w)
        sr = scaling_atkin_lehner_raw(N, r)
        for rep in mixed_reps(N, r, w, 8):
            a, b, c, d = conjugate_to_group(sw, rep, sr)
            assert a * d - b * c == 1
            assert c % N == 0


def test_mixed_oracle_sums_to_eisenstein_series():
    # the literal Eisenstein partial sum equals the mixed Kloosterman sums
    # at frequency (0, n) weighted by the true modulus to the -2u
    u = 1.5
    X = 10
    for N, r, w in ((12, 3, 2), (6, 2, 3), (9, 9, 3), (4, 4, 2), (18, 2, 6)):
        chi = principal_character(N)
        config = eisenstein_config(N, r, w, u)
        ms = modulus_set("mixed", N=N, r=r, w=w)
        k = ms.members(10 ** 6)[0]
        for n in (1, 2, -1, 3):
            direct = phi_direct(config, n, X, mode="enumerate").value
            total = 0j
            for c in ms.members(k * X):
                if c % k or c // k > X:
                    continue
                truemod = (c * c * ms.surd) ** 0.5
                total += oracle_mixed(N, r, w, 0, n, c, chi) \
                    * truemod ** (-2 * u)
            assert abs(direct - total) < 1e-12
