"""Cusps of Gamma0(N): normalization, equivalence, representatives,
stabilizers, widths, and exact scaling matrices.

A cusp is p/q in lowest terms (infinity is 1/0).  Every cusp is equivalent
to some 1/w, and 1/v ~ 1/w exactly when

    (v,N) = (w,N)   and   v/(v,N) = w/(w,N)  mod ((w,N), N/(w,N)).

Scaling matrices are kept exact: a SurdMatrix stores rational entries
carrying a common factor 1/sqrt(D), so all the defining identities can be
checked with zero tolerance.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import coprime_split, divisors, square_part


class SurdMatrix:
    """2x2 real matrix (a b; c d)/sqrt(D), rational entries, D a positive
    integer.  Stored in canonical form with D squarefree."""

    __slots__ = ("a", "b", "c", "d", "surd")

    def __init__(self, a, b, c, d, surd=1):
        assert surd >= 1
        k = square_part(surd)
        self.a = Fraction(a) / k
        self.b = Fraction(b) / k
        self.c = Fraction(c) / k
        self.d = Fraction(d) / k
        self.surd = surd // (k * k)

    @classmethod
    def from_integer(cls, a, b, c, d):
        assert a * d - b * c == 1
        return cls(a, b, c, d, 1)

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1, 1)

    def det(self):
        """Determinant of the represented real matrix, an exact Fraction."""
        return (self.a * self.d - self.b * self.c) / self.surd

    def __matmul__(self, other):
        return SurdMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.surd * other.surd,
        )

    def inverse(self):
        assert self.det() == 1, "inverse implemented for determinant-1 matrices"
        return SurdMatrix(self.d, -self.b, -self.c, self.a, self.surd)

    def __neg__(self):
        return SurdMatrix(-self.a, -self.b, -self.c, -self.d, self.surd)

    def __eq__(self, other):
        if not isinstance(other, SurdMatrix):
            return NotImplemented
        return (self.a, self.b, self.c, self.d, self.surd) == \
               (other.a, other.b, other.c, other.d, other.surd)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d, self.surd))

    def is_integral(self):
        return self.surd == 1 and all(
            x.denominator == 1 for x in (self.a, self.b, self.c, self.d))

    def integer_entries(self):
        assert self.is_integral()
        return int(self.a), int(self.b), int(self.c), int(self.d)

    def apply(self, p, q):
        """Image of the cusp p/q, returned as a primitive integer pair with
        nonnegative denominator (infinity is (1, 0))."""
        num = self.a * p + self.b * q
        den = self.c * p + self.d * q
        scale = math.lcm(num.denominator, den.denominator)
        np_, dq = int(num * scale), int(den * scale)
        if np_ == 0 and dq == 0:
            raise ValueError("matrix annihilates the cusp vector")
        g = math.gcd(np_, dq)
        np_, dq = np_ // g, dq // g
        if dq < 0 or (dq == 0 and np_ < 0):
            np_, dq = -np_, -dq
        return np_, dq

    def as_dict(self):
        return {
            "entries": [str(x) for x in (self.a, self.b, self.c, self.d)],
            "surd": self.surd,
        }

    def __repr__(self):
        return "SurdMatrix(%s, %s, %s, %s, surd=%s)" % (
            self.a, self.b, self.c, self.d, self.surd)


@dataclass(frozen=True)
class Cusp:
    """Cusp p/q of level N in lowest terms; q = 0 encodes infinity."""

    numerator: int
    denominator: int
    level: int

    def __post_init__(self):
        assert self.level >= 1
        p, q = self.numerator, self.denominator
        assert q >= 0
        if q == 0:
            assert p == 1, "infinity is stored as 1/0"
        else:
            assert math.gcd(p, q) == 1

    @classmethod
    def make(cls, p, q, N):
        """Build p/q at level N, reducing and fixing signs."""
        if q == 0:
            return cls(1, 0, N)
        if q < 0:
            p, q = -p, -q
        g = math.gcd(p, q)
        return cls(p // g, q // g, N)

    @classmethod
    def infinity(cls, N):
        return cls(1, 0, N)

    @classmethod
    def parse(cls, text, N):
        text = text.strip()
        if text in ("inf", "infinity", "oo"):
            return cls.infinity(N)
        if "/" in text:
            p, q = text.split("/")
            return cls.make(int(p), int(q), N)
        return cls.make(int(text), 1, N)

    def __str__(self):
        if self.denominator == 0:
            return "inf"
        return "%d/%d" % (self.numerator, self.denominator)

    @property
    def is_infinity(self):
        return self.denominator == 0


def is_equivalent(N, v, w):
    """Whether 1/v and 1/w are Gamma0(N)-equivalent (v, w >= 1)."""
    assert v >= 1 and w >= 1
    fv, fw = math.gcd(v, N), math.gcd(w, N)
    if fv != fw:
        return False
    return (v // fv - w // fw) % math.gcd(fw, N // fw) == 0


def normalize(cusp):
    """Canonical representative 1/w, 1 <= w <= N, with the least valid w."""
    N = cusp.level
    p, q = cusp.numerator, cusp.denominator
    if q == 0:
        w0 = N
    else:
        step = math.gcd(q, N)
        pp = p % step if step > 1 else 1
        tries = 0
        while math.gcd(pp, N) != 1:
            pp += step
            tries += 1
            assert tries <= 4 * N, "no coprime lift found"
        w0 = pp * q % N or N
    w = min(x for x in range(1, N + 1) if is_equivalent(N, x, w0))
    return Cusp(1, w, N)


def cusps_equivalent(a, b):
    """Whether two cusps of the same level are Gamma0(N)-equivalent."""
    assert a.level == b.level
    return normalize(a) == normalize(b)


def representatives(N):
    """A complete set of inequivalent cusps 1/(u f): f | N, u mod (f, N/f)
    coprime to it, lifted so gcd(u, N) = 1.  The lift can push u f past N."""
    reps = []
    for f in divisors(N):
        g = math.gcd(f, N // f)
        for u0 in range(1, g + 1):
            if math.gcd(u0, g) != 1:
                continue
            u = u0
            while math.gcd(u, N) != 1:
                u += g
                assert u <= u0 + g * N, "no coprime lift found"
            reps.append(Cusp(1, u * f, N))
    return reps


@dataclass(frozen=True)
class CuspData:
    """Arithmetic data of the cusp 1/w at level N, optionally refined by an
    Atkin-Lehner split N = r s."""

    N: int
    w: int
    f: int            # (w, N)
    N_prime: int      # N / f
    N_dprime: int     # N' / (f, N'); the width of 1/w
    r: int = None
    s: int = None
    f_r: int = None   # (f, r)
    f_s: int = None   # (f, s)
    r_prime: int = None
    s_prime: int = None
    f_r_prime: int = None   # part of f_r supported on primes of r'
    f_0: int = None
    s_f_prime: int = None   # part of s' supported on primes of f_s
    s_0: int = None
    w_prime: int = None     # w / (f_r f_s)


def cusp_data(N, w, al_split=None):
    """CuspData for 1/w; al_split is an optional coprime pair (r, s) with
    r s = N.  w may exceed N (representatives occasionally do)."""
    assert N >= 1 and w >= 1
    f = math.gcd(w, N)
    N_prime = N // f
    N_dprime = N_prime // math.gcd(f, N_prime)
    if al_split is None:
        return CuspData(N, w, f, N_prime, N_dprime)
    r, s = al_split
    if r * s != N or math.gcd(r, s) != 1 or r < 1:
        raise ValueError("invalid Atkin-Lehner split (%s, %s) of %s" % (r, s, N))
    f_r, f_s = math.gcd(f, r), math.gcd(f, s)
    assert f_r * f_s == f
    r_prime, s_prime = r // f_r, s // f_s
    f_r_prime, f_0 = coprime_split(f_r, r_prime)
    s_f_prime, s_0 = coprime_split(s_prime, f_s)
    w_prime = w // f
    assert w == f_r * f_s * w_prime
    return CuspData(N, w, f, N_prime, N_dprime, r, s, f_r, f_s,
                    r_prime, s_prime, f_r_prime, f_0, s_f_prime, s_0, w_prime)


def stabilizer_generator(N, w):
    """The t = 1 generator of the stabilizer of 1/w: rows of
    (1 - w N'' , N'' ; -w^2 N'', 1 + w N'')."""
    nd = cusp_data(N, w).N_dprime
    mat = (1 - w * nd, nd, -w * w * nd, 1 + w * nd)
    assert mat[0] * mat[3] - mat[1] * mat[2] == 1
    assert mat[2] % N == 0
    return mat


def scaling_general_raw(N, w):
    """Entries and surd of sigma_{1/w} before square reduction: the true
    matrix is (entries)/sqrt(surd)."""
    nd = cusp_data(N, w).N_dprime
    return (nd, 0, w * nd, 1), nd


def scaling_general(N, w):
    """sigma_{1/w} = (1 0; w 1) diag(sqrt(N''), 1/sqrt(N''))."""
    entries, surd = scaling_general_raw(N, w)
    return SurdMatrix(*entries, surd)


def scaling_atkin_lehner_raw(N, r, sbar=None):
    """Entries and surd of sigma_{1/r} = tau_r nu_s before square reduction."""
    if N % r or math.gcd(r, N // r) != 1:
        raise ValueError("r = %s is not a unitary divisor of N = %s" % (r, N))
    s = N // r
    if sbar is None:
        sbar = pow(s, -1, r) if r > 1 else 0
    assert (s * sbar - 1) % r == 0
    y = (sbar * s - 1) // r
    return (s, y, r * s, sbar * s), s


def scaling_atkin_lehner(N, r, sbar=None):
    """sigma_{1/r} = tau_r nu_s for the Atkin-Lehner cusp 1/r, N = r s with
    (r, s) = 1.  sbar may be any inverse of s mod r (least nonnegative when
    omitted); the choice moves sigma by a left factor in Gamma0(N)."""
    entries, surd = scaling_atkin_lehner_raw(N, r, sbar)
    return SurdMatrix(*entries, surd)


def is_singular(N, chi, w):
    """Whether the cusp 1/w is singular for chi: chi = 1 on the stabilizer
    generator (its lower-right entry)."""
    assert chi.modulus == N
    d = stabilizer_generator(N, w)[3]
    return chi.angle(d) == 0
