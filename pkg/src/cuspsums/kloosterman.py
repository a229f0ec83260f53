"""Closed-form Kloosterman sums at pairs of Atkin-Lehner cusps.

The centerpiece evaluates S_{1/r1,1/r2}(m,n;c*sqrt(uv);chi) for a level
N = pquv with p,q,u,v pairwise coprime, r1 = pu, r2 = pv, as a twisted
unit sum mod c times an explicit character front factor.  The classical
sum, the twisted (infinity,infinity) sum, and the three named
specializations (infinity,0), (infinity,1/r), (0,1/r) are provided
separately so they can be compared against the general formula.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .arith import (divisors, egcd_inv, euler_phi, exp_table, inverse_mod,
                    moebius, unit_circle, unit_pairs)
from .characters import DirichletCharacter, decompose_crt


class KloostermanValue(NamedTuple):
    """A Kloosterman sum value together with its modulus c*sqrt(surd)."""

    value: complex
    c: int
    surd: int
    method: str  # "closed-form" or "oracle"


def classical(m, n, c):
    """Ordinary Kloosterman sum S(m,n;c) = sum_{ad=1 mod c} e((am+dn)/c)."""
    assert c >= 1
    avec, dvec = unit_pairs(c)
    return complex(exp_table(c)[(avec * m + dvec * n) % c].sum())


def ramanujan(n, c):
    """Ramanujan sum S(n,0;c), evaluated two independent ways.

    The direct route sums e(an/c) over units a mod c; the arithmetic route
    is the divisor sum over d | (n,c) of d*mu(c/d).  Both must agree, and
    the exact integer is returned.
    """
    assert c >= 1
    direct = classical(n, 0, c)
    exact = sum(d * moebius(c // d) for d in divisors(c) if n % d == 0)
    assert abs(direct - exact) < 1e-9 * max(1, c), "Ramanujan sum routes disagree"
    return exact


@lru_cache(maxsize=65536)
def _conj_char_on_inverses(chi, c):
    """conj(chi)(a^-1 mod c) over the units a of Z/c (aligned with
    unit_pairs(c)); entries 0 where the argument is not a unit mod the
    character modulus."""
    _, dvec = unit_pairs(c)
    out = np.zeros(len(dvec), dtype=complex)
    for i, d in enumerate(dvec.tolist()):
        t = chi.angle(d)
        if t is not None:
            out[i] = unit_circle(-t)
    return out


def twisted_inf_inf(m, n, c, chi):
    """S at the cusp pair (infinity, infinity) twisted by chi mod N:
    sum over ad = 1 mod c of e((am+dn)/c) conj(chi)(d).  Supported on N | c."""
    assert c >= 1
    if c % chi.modulus != 0:
        return 0j
    avec, dvec = unit_pairs(c)
    vals = exp_table(c)[(avec * m + dvec * n) % c]
    return complex((vals * _conj_char_on_inverses(chi, c)).sum())


@dataclass(frozen=True)
class ALPairConfig:
    """Level N = pquv with pairwise-coprime parts, the cusp pair
    (1/r1, 1/r2) = (1/pu, 1/pv), and an even character chi mod N split
    into components chi_p, chi_q, chi_u, chi_v."""

    p: int
    q: int
    u: int
    v: int
    chi: DirichletCharacter
    chi_p: DirichletCharacter
    chi_q: DirichletCharacter
    chi_u: DirichletCharacter
    chi_v: DirichletCharacter

    @property
    def N(self):
        return self.p * self.q * self.u * self.v

    @property
    def r1(self):
        return self.p * self.u

    @property
    def s1(self):
        return self.q * self.v

    @property
    def r2(self):
        return self.p * self.v

    @property
    def s2(self):
        return self.q * self.u

    def swapped(self):
        """The configuration with u and v exchanged: same level, cusp pair
        reversed."""
        return ALPairConfig(self.p, self.q, self.v, self.u, self.chi,
                            self.chi_p, self.chi_q, self.chi_v, self.chi_u)


def al_pair_config(p, q, u, v, chi):
    """Validated ALPairConfig: parts pairwise coprime with product the
    modulus of chi, and chi even."""
    parts = (p, q, u, v)
    assert all(x >= 1 for x in parts)
    for i in range(4):
        for j in range(i + 1, 4):
            if math.gcd(parts[i], parts[j]) != 1:
                raise ValueError("p,q,u,v must be pairwise coprime")
    if p * q * u * v != chi.modulus:
        raise ValueError("pquv must equal the modulus of chi")
    if not chi.is_even:
        raise ValueError("chi must be even at Atkin-Lehner cusp pairs")
    chi_p, chi_q, chi_u, chi_v = decompose_crt(chi, parts)
    return ALPairConfig(p, q, u, v, chi, chi_p, chi_q, chi_u, chi_v)


def front_factor(config):
    """The unimodular factor
    chi_v(-1) conj(chi_p chi_v)(u) (chi_q chi_u)(v) chi_u(pq) conj(chi_v)(pq)
    multiplying the unit sum in the closed form."""
    cf = config
    t = (cf.chi_v.angle(-1)
         - cf.chi_p.angle(cf.u) - cf.chi_v.angle(cf.u)
         + cf.chi_q.angle(cf.v) + cf.chi_u.angle(cf.v)
         + cf.chi_u.angle(cf.p * cf.q) - cf.chi_v.angle(cf.p * cf.q))
    return unit_circle(t)


def modulus_allowed_al(config, c):
    """Whether c*sqrt(uv) is an allowed modulus: pq | c and (c,uv) = 1."""
    return c >= 1 and c % (config.p * config.q) == 0 and math.gcd(c, config.u * config.v) == 1


@lru_cache(maxsize=65536)
def _theorem_tables(config, c):
    """Per-(config, c) arrays for the closed form: a*(uv)^- mod c, d mod c,
    and the per-unit weight e(base - angle(chi_p at d) - angle(chi_q at a))."""
    cf = config
    uv_bar = inverse_mod(cf.u * cf.v, c)
    base = (- cf.chi_u.angle(c) + cf.chi_v.angle(c)
            + cf.chi_v.angle(-1)
            - cf.chi_p.angle(cf.u) - cf.chi_v.angle(cf.u)
            + cf.chi_q.angle(cf.v) + cf.chi_u.angle(cf.v)
            + cf.chi_u.angle(cf.p * cf.q) - cf.chi_v.angle(cf.p * cf.q))
    avec, dvec = unit_pairs(c)
    weights = []
    for a, d in zip(avec.tolist(), dvec.tolist()):
        tp = cf.chi_p.angle(d)
        tq = cf.chi_q.angle(a)
        assert tp is not None and tq is not None  # pq | c, so units stay units
        weights.append(unit_circle(base - tp - tq))
    return avec * uv_bar % c, dvec, np.array(weights)


def theorem_al_pair(config, m, n, c, uv_inverse_lift=0):
    """Closed form of S_{1/r1,1/r2}(m,n;c*sqrt(uv);chi).

    Zero off the allowed moduli; otherwise the front factor times
    conj(chi_u)(c) chi_v(c) times the unit sum
    sum_{ad = 1 mod c} conj(chi_p)(d) conj(chi_q)(a) e((a (uv)^- m + dn)/c).
    uv_inverse_lift shifts the chosen inverse of uv mod c by multiples of c
    (the value is invariant; a nonzero lift also routes the evaluation
    through the literal one-angle-per-unit loop instead of the cached
    table form, so comparing lifts exercises both paths).
    """
    cf = config
    uv = cf.u * cf.v
    if not modulus_allowed_al(cf, c):
        return KloostermanValue(0j, c, uv, "closed-form")
    if uv_inverse_lift == 0:
        xa, xd, w = _theorem_tables(cf, c)
        value = complex((exp_table(c)[(xa * m + xd * n) % c] * w).sum())
        return KloostermanValue(value, c, uv, "closed-form")
    uv_bar = inverse_mod(uv, c) + uv_inverse_lift * c
    base = (- cf.chi_u.angle(c) + cf.chi_v.angle(c)
            + cf.chi_v.angle(-1)
            - cf.chi_p.angle(cf.u) - cf.chi_v.angle(cf.u)
            + cf.chi_q.angle(cf.v) + cf.chi_u.angle(cf.v)
            + cf.chi_u.angle(cf.p * cf.q) - cf.chi_v.angle(cf.p * cf.q))
    total = 0j
    for a in range(1, c + 1):
        g, d = egcd_inv(a, c)
        if g != 1:
            continue
        tp = cf.chi_p.angle(d)
        tq = cf.chi_q.angle(a)
        if tp is None or tq is None:
            continue
        total += unit_circle(Fraction(a * uv_bar * m + d * n, c) - tp - tq + base)
    return KloostermanValue(total, c, uv, "closed-form")


def specialization(kind, m, n, c, chi, r=None):
    """Named specializations of the closed form, each written out directly
    from its own displayed formula.

    kind "inf_0":  S_{inf,0}(m,n;c*sqrt(N);chi)  = conj(chi)(c) S(N^- m, n; c),
                   on (c,N) = 1;
    kind "inf_1r": S_{inf,1/r}(m,n;c*sqrt(s);chi), on r | c, (c,s) = 1;
    kind "0_1r":   S_{0,1/r}(m,n;c*sqrt(r);chi),  on s | c, (c,r) = 1;
    with s = N/r coprime to r in the latter two.
    """
    N = chi.modulus
    assert c >= 1
    if kind == "inf_0":
        if math.gcd(c, N) != 1:
            return KloostermanValue(0j, c, N, "closed-form")
        value = chi(c).conjugate() * classical(inverse_mod(N, c) * m, n, c)
        return KloostermanValue(value, c, N, "closed-form")

    assert r is not None and N % r == 0
    s = N // r
    assert math.gcd(r, s) == 1, "r must be an Atkin-Lehner divisor of N"
    chi_r, chi_s = decompose_crt(chi, (r, s))

    if kind == "inf_1r":
        if c % r != 0 or math.gcd(c, s) != 1:
            return KloostermanValue(0j, c, s, "closed-form")
        xa, xd, w = _special_tables(kind, chi, r, c)
        value = complex((exp_table(c)[(xa * m + xd * n) % c] * w).sum())
        return KloostermanValue(value, c, s, "closed-form")

    if kind == "0_1r":
        if c % s != 0 or math.gcd(c, r) != 1:
            return KloostermanValue(0j, c, r, "closed-form")
        xa, xd, w = _special_tables(kind, chi, r, c)
        value = complex((exp_table(c)[(xa * m + xd * n) % c] * w).sum())
        return KloostermanValue(value, c, r, "closed-form")

    raise ValueError("kind must be one of inf_0, inf_1r, 0_1r")


@lru_cache(maxsize=65536)
def _special_tables(kind, chi, r, c):
    """Arrays for the two cusp-pair specializations at modulus c, in the
    layout of _theorem_tables."""
    s = chi.modulus // r
    chi_r, chi_s = decompose_crt(chi, (r, s))
    avec, dvec = unit_pairs(c)
    if kind == "inf_1r":
        mult = inverse_mod(s, c)
        base = -chi_r.angle(s) + chi_s.angle(r) - chi_s.angle(c)
        weights = [unit_circle(base - chi_r.angle(d)) for d in dvec.tolist()]
    else:
        mult = inverse_mod(r, c)
        base = chi_r.angle(-1) + chi_s.angle(r) - chi_r.angle(s) + chi_r.angle(c)
        weights = [unit_circle(base - chi_s.angle(a)) for a in avec.tolist()]
    return avec * mult % c, dvec, np.array(weights)


class ResidueIdentityReport(NamedTuple):
    lhs: complex
    rhs: complex
    difference: float


def residue_identity_check(m, n, q, a, X):
    """Both sides of the residue-class decomposition

        sum_{c = a mod q, c <= X} S(m,n;c)
          = (1/phi(q)) sum_{chi mod q} chi(a)
              sum_{(c,q)=1, c <= X} S_{inf,0}(qm, n; c*sqrt(q); chi),

    with the right side routed through the (infinity, 0) specialization at
    level q.  Returns both values and their absolute difference."""
    from .characters import character_group

    if math.gcd(a, q) != 1:
        raise ValueError("a must be a unit mod q")
    lhs = sum(classical(m, n, c) for c in range(1, X + 1) if c % q == a % q)
    rhs = 0j
    for chi in character_group(q):
        inner = 0j
        for c in range(1, X + 1):
            if math.gcd(c, q) == 1:
                inner += specialization("inf_0", q * m, n, c, chi).value
        rhs += chi(a) * inner
    rhs /= euler_phi(q)
    return ResidueIdentityReport(lhs, rhs, abs(lhs - rhs))
