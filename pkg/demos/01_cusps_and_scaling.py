"""
Cusps of Gamma0(N): classification, widths, and scaling matrices
================================================================

Walks the cusp set of a composite level, checks a pair of equivalences
that only appear at levels with repeated prime factors, and builds the
scaling matrix of a cusp together with its stabilizer.
"""

from cuspsums import (Cusp, cusp_data, cusps_equivalent, representatives,
                      scaling_atkin_lehner, scaling_general,
                      stabilizer_generator, SurdMatrix)

# --------------------------------------------------------------------------
# every cusp of level 20, one representative per class
N = 20
print("cusps of level %d:" % N)
for cusp in representatives(N):
    width = cusp_data(N, cusp.denominator).N_dprime
    print("  %-6s width %d" % (cusp, width))

# --------------------------------------------------------------------------
# equivalence is decided by an exact congruence, not a search; at level 72
# the classes split finer than the denominators suggest
a, b, c = Cusp.parse("2/3", 72), Cusp.parse("1/6", 72), Cusp.parse("1/15", 72)
print("\nlevel 72: 2/3 ~ 1/6 ?", cusps_equivalent(a, b))
print("level 72: 2/3 ~ 1/15?", cusps_equivalent(a, c))

# --------------------------------------------------------------------------
# the scaling matrix of the cusp 1/3 at level 12: entries live in Z[1/sqrt(s)]
# and are kept exact, so the two defining identities hold with no rounding
sigma = scaling_atkin_lehner(12, 3)
print("\nscaling matrix of 1/3 at level 12:")
print("  sigma       =", sigma)
print("  sigma(inf)  = %s/%s" % sigma.apply(1, 0))

gamma = stabilizer_generator(12, 3)
print("  stabilizer  =", gamma, "(in Gamma0(12))")
lam = SurdMatrix(gamma[0], gamma[1], gamma[2], gamma[3], 1)
print("  sigma^-1 stabilizer sigma =", sigma.inverse() @ lam @ sigma)

# the same construction at a non-Atkin-Lehner cusp
sigma = scaling_general(12, 2)
print("\nscaling matrix of 1/2 at level 12:")
print("  sigma       =", sigma)
print("  sigma(inf)  = %s/%s" % sigma.apply(1, 0))
