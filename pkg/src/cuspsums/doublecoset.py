"""Enumeration of double cosets Gamma_inf \\ sigma_a^{-1} Gamma sigma_b / Gamma_inf
and the direct Kloosterman-sum oracle built on it.

Two cusp-pair shapes are supported: a pair of Atkin-Lehner cusps
(1/r1, 1/r2) described by pairwise-coprime (p, q, u, v) with N = pquv,
r1 = pu, r2 = pv; and a mixed pair (general 1/w, Atkin-Lehner 1/r).

All matrices here are kept as raw integer quadruples (a, b, c, d) with a
common surd D: the true matrix is (a b; c d)/sqrt(D).  Everything is exact;
the only floating point is the final exponential in the oracle.

Representatives are canonicalized against the translation actions
rho -> T^j rho T^k, which on the raw entries fix c and move a, d by
multiples of c.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import (crt, euler_phi, exp_table, inverse_mod, square_part,
                    unit_circle)
from .cusps import (SurdMatrix, cusp_data, is_equivalent, is_singular,
                    scaling_atkin_lehner_raw, scaling_general_raw)


def _mat_mul(x, y):
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def _mat_adj(x):
    return (x[3], -x[1], -x[2], x[0])


@dataclass(frozen=True)
class DoubleCosetRep:
    """One representative: true matrix = stored/sqrt(surd)."""

    stored: tuple           # (a, b, c, d); integers unless a scaling was shifted
    surd: int
    labels: tuple           # (x, y, z, w) for an AL pair, (A, B, C, D) mixed
    kind: str               # "al" | "mixed"

    def matrix(self):
        return SurdMatrix(*self.stored, self.surd)

    def e_argument(self, m, n):
        """(a m + d n)/c of the true matrix, an exact rational."""
        a, _, c, d = self.stored
        return Fraction(a * m + d * n) / Fraction(c)


def canonical_key(stored, surd):
    """Key labelling the double coset of stored/sqrt(surd); quotients by
    the sign and by integer translations on both sides.  The surd is
    reduced to its squarefree part so keys from differently-scaled
    enumerations agree."""
    k = square_part(surd)
    a, b, c, d = (Fraction(x, k) for x in stored)
    if c < 0 or (c == 0 and d < 0):
        a, c, d = -a, -c, -d
    if c == 0:
        return (surd // (k * k), 0, a, d)
    return (surd // (k * k), c, a % c, d % c)


def al_reps(p, q, u, v, z):
    """Representatives with lower-left z p q sqrt(uv) for the AL cusp pair
    (1/pu, 1/pv): pairs x, w in (Z/zpq)* with x w u v = 1 mod zpq."""
    for a, bname in ((p, q), (p, u), (p, v), (q, u), (q, v), (u, v)):
        assert math.gcd(a, bname) == 1, "p, q, u, v must be pairwise coprime"
    assert z >= 1
    if math.gcd(z, u * v) != 1:
        return []
    zpq = z * p * q
    reps = []
    for x in range(zpq):
        if math.gcd(x, zpq) != 1:
            continue
        w = inverse_mod(x * u * v, zpq)
        y = (x * w * u * v - 1) // zpq
        stored = (x * u * v, y, zpq * u * v, w * u * v)
        reps.append(DoubleCosetRep(stored, u * v, (x, y, z, w), "al"))
    assert len(reps) == euler_phi(zpq)
    return reps


def mixed_allowed_c(N, r, w, c_int):
    """Whether c_int sqrt(N'' s) occurs as a lower-left entry for the pair
    (1/w, 1/r): c_int = f_r C' with (C', r' f_s) = 1."""
    data = cusp_data(N, w, (r, N // r))
    if c_int <= 0 or c_int % data.f_r:
        return False
    return math.gcd(c_int // data.f_r, data.r_prime * data.f_s) == 1


def mixed_reps_for_c(N, r, w, c_int):
    """Representatives of the (1/w, 1/r) double coset with lower-left
    c_int sqrt(N'' s): pairs (C, D), D mod s C, completed to determinant 1."""
    s = N // r
    data = cusp_data(N, w, (r, s))
    if not mixed_allowed_c(N, r, w, c_int):
        return []
    C = c_int
    Cp = C // data.f_r
    g_r = math.gcd(data.f_r, data.r_prime)
    g_s = math.gcd(data.f_s, data.s_prime)
    # the two congruences forced on D by the determinant equation
    d_class_r = (-inverse_mod(Cp, g_r) * (w // data.f_r)) % g_r
    dp_class_s = (inverse_mod(C, g_s) * (w // data.f_s)) % g_s
    reps = []
    for D in range(s * C):
        if D % data.f_s:
            continue
        Dp = D // data.f_s
        if math.gcd(Dp, data.s_prime) != 1 or math.gcd(C, D) != 1:
            continue
        if D % g_r != d_class_r or Dp % g_s != dp_class_s:
            continue
        A, B = _complete_mixed(data, C, D)
        stored = (A * s, B, C * data.N_dprime * s, D * data.N_dprime)
        reps.append(DoubleCosetRep(stored, data.N_dprime * s, (A, B, C, D), "mixed"))
    return reps


def _complete_mixed(data, C, D):
    """Find A, B with AD - BC = 1, A = -(w/f_r)~ C' mod r', B = -(w/f_s)~ D' mod s',
    then reduce A mod N'' C (left translations)."""
    r_prime, s_prime = data.r_prime, data.s_prime
    Cp, Dp = C // data.f_r, D // data.f_s
    g, x, y = _egcd(D, C)
    assert g == 1
    A0, B0 = x, -y
    # solve (A0 + n C, B0 + n D) onto the two residue targets
    sols, mods = [], []
    if r_prime > 1:
        tA = (-inverse_mod((data.w // data.f_r) % r_prime, r_prime) * Cp) % r_prime
        g1 = math.gcd(data.f_r, r_prime)
        delta = (tA - A0) % r_prime
        assert delta % g1 == 0
        m1 = r_prime // g1
        if m1 > 1:
            sols.append(delta // g1 * inverse_mod(C // g1, m1))
            mods.append(m1)
    if s_prime > 1:
        tB = (-inverse_mod((data.w // data.f_s) % s_prime, s_prime) * Dp) % s_prime
        g2 = math.gcd(data.f_s, s_prime)
        delta = (tB - B0) % s_prime
        assert delta % g2 == 0
        m2 = s_prime // g2
        if m2 > 1:
            sols.append(delta // g2 * inverse_mod(D // g2, m2))
            mods.append(m2)
    n = crt(sols, mods) if mods else 0
    A, B = A0 + n * C, B0 + n * D
    A %= data.N_dprime * C
    B = (A * D - 1) // C
    assert A * D - B * C == 1
    assert (C + data.w * A) % data.r == 0 and (D + data.w * B) % data.s == 0
    return A, B


def mixed_reps(N, r, w, c_max):
    """All representatives with 0 < c_int <= c_max.  The identity coset
    contributed by an equivalent pair (delta term) is not included here;
    see pair_contributes_identity."""
    out = []
    for c_int in range(1, c_max + 1):
        out.extend(mixed_reps_for_c(N, r, w, c_int))
    return out


def pair_contributes_identity(N, r, w):
    """Whether the (1/w, 1/r) double coset contains the c = 0 translation
    coset, i.e. the two cusps are equivalent."""
    return is_equivalent(N, w, r)


def _egcd(a, b):
    old_r, rr = a, b
    old_s, ss = 1, 0
    old_t, tt = 0, 1
    while rr:
        qq = old_r // rr
        old_r, rr = rr, old_r - qq * rr
        old_s, ss = ss, old_s - qq * ss
        old_t, tt = tt, old_t - qq * tt
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class ModulusSet:
    """Allowed lower-left entries c sqrt(surd) for a cusp pair."""

    description: str
    surd: int

    def contains(self, c_int):
        raise NotImplementedError

    def members(self, c_max):
        return [c for c in range(1, c_max + 1) if self.contains(c)]


@dataclass(frozen=True)
class ALModulusSet(ModulusSet):
    p: int = 1
    q: int = 1
    u: int = 1
    v: int = 1

    def contains(self, c_int):
        return (c_int > 0 and c_int % (self.p * self.q) == 0
                and math.gcd(c_int, self.u * self.v) == 1)


@dataclass(frozen=True)
class MixedModulusSet(ModulusSet):
    N: int = 1
    r: int = 1
    w: int = 1

    def contains(self, c_int):
        return mixed_allowed_c(self.N, self.r, self.w, c_int)


@dataclass(frozen=True)
class InfInfModulusSet(ModulusSet):
    N: int = 1

    def contains(self, c_int):
        return c_int > 0 and c_int % self.N == 0


def modulus_set(kind, **params):
    """Allowed moduli for a supported cusp pair.

    kind "al": params p, q, u, v -> {c sqrt(uv) : pq | c, (c, uv) = 1}.
    kind "mixed": params N, r, w -> {c sqrt(N'' s) : c = f_r C', (C', r' f_s) = 1}.
    kind "inf_inf": params N -> {c : N | c}.
    """
    if kind == "al":
        p, q, u, v = params["p"], params["q"], params["u"], params["v"]
        desc = "c*sqrt(%d) with %d | c and gcd(c, %d) = 1" % (u * v, p * q, u * v)
        return ALModulusSet(desc, u * v, p, q, u, v)
    if kind == "mixed":
        N, r, w = params["N"], params["r"], params["w"]
        data = cusp_data(N, w, (r, N // r))
        desc = ("c*sqrt(%d) with c = %d*C', gcd(C', %d) = 1"
                % (data.N_dprime * data.s, data.f_r, data.r_prime * data.f_s))
        return MixedModulusSet(desc, data.N_dprime * (N // r), N, r, w)
    if kind == "inf_inf":
        N = params["N"]
        return InfInfModulusSet("c with %d | c" % N, 1, N)
    raise ValueError("unsupported cusp pair kind %r" % kind)


def conjugate_to_group(sigma_a_raw, rep, sigma_b_raw):
    """Recover the Gamma0(N) element sigma_a rho sigma_b^{-1} as an exact
    integer matrix.  The combined surd must be a perfect square."""
    (ma, da), (mb, db) = sigma_a_raw, sigma_b_raw
    total = da * rep.surd * db
    k = math.isqrt(total)
    assert k * k == total, "conjugation surd %s is not a perfect square" % total
    prod = _mat_mul(_mat_mul(ma, rep.stored), _mat_adj(mb))
    out = []
    for x in prod:
        xx = Fraction(x) / k
        assert xx.denominator == 1, "conjugated matrix is not integral"
        out.append(int(xx))
    a, b, c, d = out
    assert a * d - b * c == 1
    return a, b, c, d


def kloosterman_oracle(sigma_a_raw, sigma_b_raw, reps, m, n, chi):
    """Direct evaluation of the Kloosterman sum over the given double-coset
    representatives (all sharing one lower-left entry):
    sum of conj(chi)(sigma_a rho sigma_b^{-1}) e((a m + d n)/c)."""
    N = chi.modulus
    total = 0j
    for rep in reps:
        gamma = conjugate_to_group(sigma_a_raw, rep, sigma_b_raw)
        assert gamma[2] % N == 0
        ang = chi.angle(gamma[3])
        assert ang is not None, "character argument is not a unit"
        total += unit_circle(rep.e_argument(m, n) - ang)
    return total


def _shift_sigma(sigma_raw, t):
    """Right-multiply a raw scaling matrix by (1 t; 0 1), t rational."""
    (a, b, c, d), surd = sigma_raw
    return (a, a * t + b, c, c * t + d), surd


def _shift_rep(rep, alpha, beta):
    """Move a representative of the (sigma_a, sigma_b) coset to the
    (sigma_a T_alpha, sigma_b T_beta) coset: rho -> T_{-alpha} rho T_beta."""
    a, b, c, d = rep.stored
    return DoubleCosetRep(
        (a - alpha * c, b - alpha * d + beta * (a - alpha * c),
         c, d + beta * c),
        rep.surd, rep.labels, rep.kind)


@lru_cache(maxsize=None)
def _al_oracle_data(p, q, u, v, c_int):
    """Cached (x, w, d) triples for the default-scaling AL pair at modulus
    c_int: labels of each representative and the lower-right entry of its
    conjugated Gamma0(N) element."""
    N = p * q * u * v
    sig1 = scaling_atkin_lehner_raw(N, p * u)
    sig2 = scaling_atkin_lehner_raw(N, p * v)
    out = []
    for rep in al_reps(p, q, u, v, c_int // (p * q)):
        gamma = conjugate_to_group(sig1, rep, sig2)
        assert gamma[2] % N == 0
        out.append((rep.labels[0], rep.labels[3], gamma[3]))
    return tuple(out)


@lru_cache(maxsize=65536)
def _al_oracle_arrays(p, q, u, v, c_int, chi):
    """(x, w) label arrays and conj(chi) values at the conjugated
    lower-right entries, aligned, for the default-scaling oracle."""
    data = _al_oracle_data(p, q, u, v, c_int)
    xvec = np.array([x for x, _, _ in data], dtype=np.int64)
    wvec = np.array([w for _, w, _ in data], dtype=np.int64)
    cw = np.array([unit_circle(-chi.angle(d)) for _, _, d in data])
    return xvec, wvec, cw


def oracle_al(p, q, u, v, m, n, c_int, chi,
              sbar1=None, sbar2=None, alpha=None, beta=None):
    """Kloosterman sum S_{1/pu, 1/pv}(m, n; c_int sqrt(uv); chi) by direct
    double-coset enumeration.  Optional sbar overrides rebuild the two
    scaling matrices with other inverses; alpha, beta apply the
    sigma -> sigma (1 t; 0 1) perturbation."""
    N = p * q * u * v
    if chi.modulus != N:
        raise ValueError("character modulus %d != N = %d" % (chi.modulus, N))
    if not chi.is_even:
        raise ValueError("odd character: Kloosterman sums at these cusps need chi even")
    mset = modulus_set("al", p=p, q=q, u=u, v=v)
    if not mset.contains(c_int):
        return 0j
    if sbar1 is None and sbar2 is None and alpha is None and beta is None:
        xvec, wvec, cw = _al_oracle_arrays(p, q, u, v, c_int, chi)
        return complex((exp_table(c_int)[(xvec * m + wvec * n) % c_int] * cw).sum())
    sig1 = scaling_atkin_lehner_raw(N, p * u, sbar1)
    sig2 = scaling_atkin_lehner_raw(N, p * v, sbar2)
    reps = al_reps(p, q, u, v, c_int // (p * q))
    if alpha is not None or beta is not None:
        alpha = Fraction(alpha or 0)
        beta = Fraction(beta or 0)
        sig1 = _shift_sigma(sig1, alpha)
        sig2 = _shift_sigma(sig2, beta)
        reps = [_shift_rep(r, alpha, beta) for r in reps]
    return kloosterman_oracle(sig1, sig2, reps, m, n, chi)


def oracle_mixed(N, r, w, m, n, c_int, chi):
    """Kloosterman sum S_{1/w, 1/r}(m, n; c_int sqrt(N'' s); chi) for the
    mixed pair (general cusp first), by direct enumeration."""
    if chi.modulus != N:
        raise ValueError("character modulus %d != N = %d" % (chi.modulus, N))
    if not is_singular(N, chi, w):
        raise ValueError("cusp 1/%d is not singular for this character" % w)
    if not chi.is_even:
        raise ValueError("odd character: the Atkin-Lehner cusp needs chi even")
    sig_c = scaling_general_raw(N, w)
    sig_a = scaling_atkin_lehner_raw(N, r)
    return kloosterman_oracle(sig_c, sig_a, mixed_reps_for_c(N, r, w, c_int),
                              m, n, chi)


def gamma0_elements(N, height):
    """All (a, b, c, d) in Gamma0(N) with every |entry| <= height, up to
    overall sign (c > 0, or c = 0 with a = 1).  The upper-triangular family
    matters: conjugated between scalings of two distinct cusps it lands on
    cosets with nonzero lower-left entry."""
    out = [(1, b, 0, 1) for b in range(-height, height + 1)]
    for c in range(N, height + 1, N):
        for d in range(-height, height + 1):
            if math.gcd(c, d) != 1:
                continue
            a0 = inverse_mod(d % c, c)
            for a in range(a0 - (a0 + height) // c * c, height + 1, c):
                if abs(a) > height:
                    continue
                b = (a * d - 1) // c
                if abs(b) <= height:
                    out.append((a, b, c, d))
    return out


def sweep_double_coset(sigma_a_raw, sigma_b_raw, N, height):
    """Canonical keys of sigma_a^{-1} gamma sigma_b over a bounded sweep of
    gamma in Gamma0(N); the assumption-free cross-check of the enumerations."""
    (ma, da), (mb, db) = sigma_a_raw, sigma_b_raw
    total = da * db
    keys = set()
    for gamma in gamma0_elements(N, height):
        prod = _mat_mul(_mat_mul(_mat_adj(ma), gamma), mb)
        if prod[2] == 0:
            continue  # identity coset: not part of any Kloosterman sum
        keys.add(canonical_key(prod, total))
    return keys
