"""
Generalized Kloosterman sums at pairs of Atkin-Lehner cusps
===========================================================

Evaluates S_{a b}(m, n; c sqrt(uv); chi) for cusp pairs (1/(pu), 1/(pv))
of Gamma0(pquv) three ways -- the closed form, the literal double-coset
sum, and the named specializations -- and shows the symmetry obtained by
swapping the two cusps.
"""

from cuspsums import (al_pair_config, character_group, classical,
                      modulus_set, oracle_al, principal_character,
                      residue_identity_check, specialization,
                      theorem_al_pair)

# --------------------------------------------------------------------------
# level 6 split as (p,q,u,v) = (2,3,1,1): the cusp pair (1/2, 1/2); the sum
# is supported on multiples of pq = 6 and matches the brute-force
# double-coset evaluation term for term
chi = principal_character(6)
config = al_pair_config(2, 3, 1, 1, chi)
print("cusp pair (1/2, 1/2) at level 6, principal character:")
for c in modulus_set("al", p=2, q=3, u=1, v=1).members(24):
    closed = theorem_al_pair(config, 1, 1, c)
    direct = oracle_al(2, 3, 1, 1, 1, 1, c, chi)
    print("  c = %2d*sqrt(%d):  closed %18.12f%+.12fi   |closed - direct| = %.2e"
          % (closed.c, closed.surd, closed.value.real, closed.value.imag,
             abs(closed.value - direct)))

# --------------------------------------------------------------------------
# a genuinely complex example: level 15 with an even character of order 4,
# split (3,1,5,1) -- the cusp pair (1/15, 1/3); exchanging u and v reverses
# the cusp pair and conjugates the value (after swapping m and n)
chi15 = [x for x in character_group(15)
         if x.is_even and x.order() == 4][0]
config = al_pair_config(3, 1, 5, 1, chi15)
print("\ncusp pair (1/15, 1/3) at level 15, order-4 character:")
for c in (3, 6, 9, 21):
    v1 = theorem_al_pair(config, 2, 1, c).value
    v2 = theorem_al_pair(config.swapped(), 1, 2, c).value
    print("  c = %2d: S = %18.12f%+.12fi   swap+conj agrees: %s"
          % (c, v1.real, v1.imag, abs(v1 - v2.conjugate()) < 1e-12))

# --------------------------------------------------------------------------
# the (infinity, 0) specialization reduces to a classical Kloosterman sum
# with m twisted by the inverse of N; here N = 5, c = 7
v = specialization("inf_0", 1, 1, 7, principal_character(5))
print("\nS_{inf,0}(1,1; 7 sqrt(5)) =", v.value)
print("classical S(3,1;7)        =", classical(3, 1, 7), " (5^-1 = 3 mod 7)")

# --------------------------------------------------------------------------
# sums over c in a fixed residue class decompose into character-twisted
# sums at the (infinity, 0) cusp pair of level q
rep = residue_identity_check(1, 1, 4, 3, 40)
print("\nsum of S(1,1;c) over c = 3 mod 4, c <= 40:")
print("  left side  %18.12f%+.12fi" % (rep.lhs.real, rep.lhs.imag))
print("  right side %18.12f%+.12fi" % (rep.rhs.real, rep.rhs.imag))
print("  difference %.2e" % rep.difference)
