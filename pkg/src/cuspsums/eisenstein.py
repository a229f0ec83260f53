"""Fourier coefficients of Eisenstein series at Atkin-Lehner cusps of
Gamma0(N), principal nebentypus.

phi_{a c}(n, u) is the coefficient series sum_{gamma} S_{c a}(0, n; gamma)
/ gamma^{2u} over the positive lower-left entries of the double cosets
attached to the pair (c = 1/w arbitrary, a = 1/r Atkin-Lehner).

Three evaluation routes:

* phi_direct(..., mode="enumerate") sums the series literally: for each
  modulus C' it enumerates the unit residues D' mod s' f_r C' subject to
  the two congruences that carve out the double-coset representatives.
* phi_direct(..., mode="factored") sums the same series with each inner
  residue sum evaluated in closed form (a Ramanujan sum times two
  root-of-unity phases); term-by-term equal to the enumeration, but
  vectorized so X = 10^5 is cheap.
* phi_closed evaluates the whole series through Gauss sums and Dirichlet
  L-values.  By default it completes the local Euler factors at primes
  dividing s_0 f_0; see phi_closed's docstring.

rho_assemble attaches the archimedean factor pi^u / Gamma(u) |n|^(u-1).
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import mpmath
import numpy as np

from .arith import divisors, euler_phi, factorize, unit_circle
from .characters import character_group, gauss_sum, induce, l_truncated
from .cusps import CuspData, cusp_data, is_equivalent
from .kloosterman import ramanujan


@dataclass(frozen=True)
class EisensteinConfig:
    """Level N = r s (Atkin-Lehner split), series cusp 1/r, observation
    cusp 1/w with w = v f, gcd(v, N) = 1, and spectral parameter u."""

    N: int
    r: int
    s: int
    w: int
    u: complex
    data: CuspData


def eisenstein_config(N, r, w, u):
    """Validated EisensteinConfig; requires Re(u) > 1 (absolute
    convergence) and w = v (w, N) with gcd(v, N) = 1."""
    u = complex(u)
    if u.real <= 1.0:
        raise ValueError("need Re(u) > 1 for absolute convergence")
    if N % r or math.gcd(r, N // r) != 1:
        raise ValueError("r = %s is not a unitary divisor of N = %s" % (r, N))
    data = cusp_data(N, w, (r, N // r))
    if math.gcd(data.w_prime, N) != 1:
        raise ValueError(
            "w = %s is not (unit mod N) * (w, N); normalize the cusp first" % w)
    return EisensteinConfig(N, r, N // r, w, u, data)


class SupportDecomposition(NamedTuple):
    required_divisor: int   # (f_r'/(f_r',r')) * (s_f'/(s_f',f_s))
    k: int                  # n / required_divisor, sign kept
    k_r: int                # (|k|, (f_r', r'))
    k_s: int                # (|k|, (s_f', f_s))
    ell: int                # k / (k_r k_s)


def _structure(data):
    """(J_r, J_s, Q, R, S) for a CuspData with an Atkin-Lehner split:
    J_r = f_r'/(f_r',r'), J_s = s_f'/(s_f',f_s) (the two forced divisors
    of n), Q = s_0 f_0 (the inner Ramanujan modulus), R = (f_r', r'),
    S = (s_f', f_s) (the two character moduli)."""
    R = math.gcd(data.f_r_prime, data.r_prime)
    S = math.gcd(data.s_f_prime, data.f_s)
    return data.f_r_prime // R, data.s_f_prime // S, data.s_0 * data.f_0, R, S


def n_support(config, n):
    """Decompose n against the support lattice of the coefficient series;
    returns "unsupported" when the n-th coefficient vanishes identically."""
    if n == 0:
        raise ValueError("n = 0 has no support decomposition (constant term)")
    J_r, J_s, _, R, S = _structure(config.data)
    J = J_r * J_s
    if n % J:
        return "unsupported"
    k = n // J
    k_r = math.gcd(abs(k), R)
    k_s = math.gcd(abs(k), S)
    assert k % (k_r * k_s) == 0
    return SupportDecomposition(J, k, k_r, k_s, k // (k_r * k_s))


class EisensteinCoefficient(NamedTuple):
    value: complex
    truncation_bound: float   # 0 for the closed form
    method: str


def _prefactor(data, u):
    """(N'' s f_r^2)^(-u), principal branch on the positive real base."""
    base = data.N_dprime * data.s * data.f_r ** 2
    assert base >= 1
    return cmath.exp(-u * math.log(base))


def truncation_bound(config, X):
    """Rigorous tail bound for the series truncated at C' <= X: the
    trivial inner-sum bound s' f_r C' and the integral test."""
    sig = config.u.real
    d = config.data
    pref = (d.N_dprime * d.s * d.f_r ** 2) ** (-sig)
    inner = d.s_prime * d.f_r
    if X < 1:
        return pref * inner * (1.0 + 1.0 / (2 * sig - 2))
    return pref * inner * X ** (2 - 2 * sig) / (2 * sig - 2)


# ---------------------------------------------------------------------------
# direct series

def _phi_enumerate(config, n, X):
    """Literal sum over C' <= X, (C', f_s r') = 1, of C'^(-2u) times the
    sum of e(n D' / (s' f_r C')) over units D' mod s' f_r C' with
    D' = -C'bar w' mod (f_r, r') and D' = +C'bar w' mod (f_s, s')."""
    d = config.data
    _, _, _, R, S = _structure(d)
    total = 0j
    for cp in range(1, X + 1):
        if math.gcd(cp, d.f_s * d.r_prime) != 1:
            continue
        M = d.s_prime * d.f_r * cp
        a0 = (-pow(cp, -1, R) * d.w_prime) % R if R > 1 else 0
        b0 = (pow(cp, -1, S) * d.w_prime) % S if S > 1 else 0
        inner = 0j
        for dp in range(M):
            if math.gcd(dp, M) != 1:
                continue
            if dp % R != a0 or dp % S != b0:
                continue
            inner += unit_circle(Fraction(n * dp, M))
        total += inner * cmath.exp(-2 * config.u * math.log(cp))
    return _prefactor(d, config.u) * total


_SIEVE_LIMIT = 0
_MU = None
_PHI = None


def _sieves(limit):
    """Cached numpy Moebius and Euler-phi tables on 0..limit."""
    global _SIEVE_LIMIT, _MU, _PHI
    if limit > _SIEVE_LIMIT:
        limit = max(limit, 2 * _SIEVE_LIMIT, 1 << 16)
        comp = np.zeros(limit + 1, dtype=bool)
        mu = np.ones(limit + 1, dtype=np.int64)
        phi = np.arange(limit + 1, dtype=np.int64)
        for p in range(2, limit + 1):
            if comp[p]:
                continue
            comp[p * p::p] = True
            mu[p::p] *= -1
            mu[p * p::p * p] = 0
            phi[p::p] -= phi[p::p] // p
        _SIEVE_LIMIT, _MU, _PHI = limit, mu, phi
    return _MU, _PHI


@lru_cache(maxsize=8)
def _power_array(u, X):
    """C'^(-2u) for C' = 1..X (the per-u heavy lifting, shared across
    configs and n)."""
    cp = np.arange(1, X + 1, dtype=np.float64)
    return np.exp(-2 * u * np.log(cp))


def _ramanujan_array(k, Q, X):
    """c_{C'Q}(k) for C' = 1..X as arr[1..X] (arr[0] unused)."""
    mu, phi = _sieves(Q * X)
    arr = np.zeros(X + 1, dtype=np.int64)
    if k == 0:
        arr[1:] = phi[np.arange(1, X + 1) * Q]
        return arr
    for dv in divisors(abs(k)):
        step = dv // math.gcd(dv, Q)
        cps = np.arange(step, X + 1, step, dtype=np.int64)
        if len(cps):
            arr[cps] += dv * mu[(cps * Q) // dv]
    return arr


def _phi_factored(config, n, X):
    """Same series as _phi_enumerate with each inner sum evaluated in
    closed form: J_r J_s delta-supports, a Ramanujan sum c_{C'Q}(n), and
    two phases e(-n w' (Q s_f' C'^2)bar / f_r') e(+n w' (Q f_r' C'^2)bar / s_f')."""
    d = config.data
    J_r, J_s, Q, _, _ = _structure(d)
    if n % (J_r * J_s):
        return 0j              # every inner residue sum vanishes termwise
    if X < 1:
        return 0j
    k = n // (J_r * J_s)
    fr, sf = d.f_r_prime, d.s_f_prime
    E = d.f_s * d.r_prime
    P = math.lcm(fr, sf, E)
    table = np.zeros(P, dtype=complex)
    for t in range(P):
        if math.gcd(t, E) != 1:
            continue
        ang = Fraction(0)
        if fr > 1:
            ang -= Fraction(n * d.w_prime * pow(Q * sf * t * t, -1, fr), fr)
        if sf > 1:
            ang += Fraction(n * d.w_prime * pow(Q * fr * t * t, -1, sf), sf)
        table[t] = unit_circle(ang)
    cp = np.arange(1, X + 1, dtype=np.int64)
    weights = table[cp % P]                     # 0 off gcd(C', f_s r') = 1
    c_arr = _ramanujan_array(k, Q, X)[1:]
    terms = weights * c_arr * _power_array(config.u, X)
    return _prefactor(d, config.u) * J_r * J_s * terms.sum()


def phi_direct(config, n, X, mode="auto"):
    """Partial sum of the coefficient series over moduli C' <= X, with a
    rigorous tail bound.  mode "enumerate" sums unit residues literally;
    "factored" evaluates each inner sum in closed form (identical
    term-by-term); "auto" enumerates only when that is cheap."""
    assert X >= 0
    if mode == "auto":
        work = config.data.s_prime * config.data.f_r * X * (X + 1) // 2
        mode = "enumerate" if work <= 2 * 10 ** 6 else "factored"
    if mode == "enumerate":
        value = _phi_enumerate(config, n, X)
    elif mode == "factored":
        value = _phi_factored(config, n, X)
    else:
        raise ValueError("unknown mode %r" % mode)
    return EisensteinCoefficient(value, truncation_bound(config, X),
                                 "direct-" + mode)


# ---------------------------------------------------------------------------
# closed form

@lru_cache(maxsize=None)
def _radical(n):
    return math.prod(p for p, _ in factorize(n))


def _local_completion(chi, psi, Q, k, u):
    """sum over C2 supported on the primes of Q of
    (chi psi)^(-2)(C2) c_{C2 Q}(k) / C2^(2u); finitely many terms since
    c_{C2 Q}(k) = 0 once any v_p(C2 Q) exceeds v_p(k) + 1."""
    c2s = [1]
    for p, e in factorize(Q):
        vk = 0
        kk = abs(k)
        while kk % p == 0:
            kk //= p
            vk += 1
        top = max(vk + 1 - e, 0)
        c2s = [c * p ** j for c in c2s for j in range(top + 1)]
    total = 0j
    for c2 in c2s:
        c = ramanujan(k, c2 * Q)
        if c == 0:
            continue
        ang = -2 * (chi.angle(c2) + psi.angle(c2))
        total += c * unit_circle(ang) * cmath.exp(-2 * u * math.log(c2))
    return total


def phi_closed(config, n, variant="v", complete_local_factors=True):
    """Closed form of the n-th coefficient via Gauss sums and L-values.

    The inner Ramanujan modulus of the series is C' s_0 f_0, and C' runs
    over all integers coprime to f_s r' -- including multiples of primes
    of s_0 f_0.  Splitting off those primes yields, for each character
    pair, a finite completion factor (the sum over C2 | (s_0 f_0)^inf)
    alongside the L-value taken with Euler factors at s_0 f_0 removed.
    With complete_local_factors=False both adjustments are dropped (the
    C2 = 1 term only, L-factors removed at f_s r' alone); that variant
    agrees with the completed one exactly when s_0 f_0 = 1.

    variant chooses the unit twisting the character evaluation: "v" for
    w = v (w, N), "wprime" for w' = w/(f_r f_s); the two are equal."""
    if n == 0:
        raise ValueError("n = 0 is served by phi_direct (constant term)")
    dec = n_support(config, n)
    if dec == "unsupported":
        return EisensteinCoefficient(0j, 0.0, "closed-form")
    d, u = config.data, config.u
    J_r, J_s, Q, R, S = _structure(d)
    k, k_r, k_s, ell = dec.k, dec.k_r, dec.k_s, dec.ell
    R_k, S_k = R // k_r, S // k_s
    v = config.w // d.f
    assert v == d.w_prime
    twist = {"v": v, "wprime": d.w_prime}[variant]
    Qx = Q if complete_local_factors else 1
    excluded = d.f_s * d.r_prime * Qx
    M = math.lcm(R_k, S_k, _radical(excluded))
    norm = euler_phi(R_k) * euler_phi(S_k)
    total = 0j
    for chi in character_group(R_k):
        tau_chi = gauss_sum(chi.conjugate())
        lam_chi = induce((chi * chi).conjugate(), M)
        for psi in character_group(S_k):
            tau_psi = gauss_sum(psi.conjugate())
            lam = lam_chi * induce((psi * psi).conjugate(), M)
            lval = l_truncated(lam, 2 * u).value
            if complete_local_factors:
                front = _local_completion(chi, psi, Q, k, u)
            else:
                front = complex(ramanujan(ell, Q))
            if front == 0:
                continue
            base = (chi.angle(ell) + psi.angle(ell)
                    + chi.angle(twist) + psi.angle(twist)
                    - chi.angle(Q) - psi.angle(Q)
                    + chi.angle(-k_s) - chi.angle(S)
                    + psi.angle(k_r) - psi.angle(R))
            dsum = 0j
            for dv in divisors(abs(k)):
                if math.gcd(dv, excluded) != 1:
                    continue
                ang = base - 2 * (chi.angle(dv) + psi.angle(dv))
                dsum += unit_circle(ang) * cmath.exp((1 - 2 * u) * math.log(dv))
            total += tau_chi * tau_psi * front * dsum / lval
    value = _prefactor(d, u) * J_r * J_s * total / norm
    return EisensteinCoefficient(value, 0.0, "closed-form")


# ---------------------------------------------------------------------------
# assembly

def rho_assemble(config, n, X=10 ** 5):
    """rho = phi * pi^u / Gamma(u) / |n|^(1-u) for n != 0; for n = 0 the
    pair (delta, phi(0, u)) with delta the cusp-equivalence indicator and
    phi(0, u) the constant term from phi_direct.  Gamma is evaluated to
    1e-12 only for Re(u) <= 5; larger Re(u) is refused."""
    u = config.u
    if not u.real <= 5.0:
        raise ValueError("Gamma evaluation certified only for Re(u) <= 5")
    if n == 0:
        delta = 1.0 if is_equivalent(config.N, config.r, config.w) else 0.0
        return delta, phi_direct(config, 0, X)
    phi = phi_closed(config, n)
    gamma_u = complex(mpmath.gamma(mpmath.mpc(u.real, u.imag)))
    factor = cmath.exp(u * math.log(math.pi)) / gamma_u \
        * cmath.exp((u - 1) * math.log(abs(n)))
    return EisensteinCoefficient(phi.value * factor, 0.0, "closed-form")
