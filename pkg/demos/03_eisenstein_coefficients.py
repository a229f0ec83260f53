"""
Fourier coefficients of Eisenstein series at Atkin-Lehner cusps
===============================================================

Computes the coefficient series phi(n, u) of the Eisenstein series
attached to the cusp pair (1/r, 1/w) of Gamma0(N) -- once by truncating
the defining series with a rigorous tail bound, once in closed form via
Gauss sums and L-values -- and assembles the normalized coefficients rho.
"""

from cuspsums import (eisenstein_config, n_support, phi_closed, phi_direct,
                      rho_assemble)

# --------------------------------------------------------------------------
# level 12, observing the Eisenstein series of the cusp 1/3 at the cusp 1/2
config = eisenstein_config(12, 3, 2, u=1.5)
print("phi(n, 3/2) at level 12, cusp pair (1/3, 1/2):")
print("  %3s  %38s  %10s" % ("n", "closed form", "series gap"))
for n in (-3, -2, -1, 1, 2, 3, 6):
    closed = phi_closed(config, n)
    near = phi_direct(config, n, 4000)
    gap = abs(closed.value - near.value)
    print("  %3d  %18.12f%+.12fi  %.2e (tail bound %.2e)"
          % (n, closed.value.real, closed.value.imag, gap,
             near.truncation_bound))

# --------------------------------------------------------------------------
# not every frequency is supported: the lattice of nonzero coefficients is
# an arithmetic progression determined by the cusp pair
config8 = eisenstein_config(8, 8, 4, u=1.5)
print("\nsupport at level 8, cusp pair (1/8, 1/4):")
for n in (1, 2, 3, 4):
    print("  n = %d: %s" % (n, n_support(config8, n)))

# --------------------------------------------------------------------------
# at level 1 the coefficients are the classical divisor sums over zeta
one = eisenstein_config(1, 1, 1, u=1.25)
print("\nlevel 1, u = 5/4 (phi(n) = sigma_{1-2u}(n)/zeta(2u)):")
for n in (1, 2, 6):
    print("  phi(%d) = %.12f" % (n, phi_closed(one, n).value.real))

# --------------------------------------------------------------------------
# the assembled coefficient rho(n) = phi(n) pi^u / Gamma(u) / |n|^(1-u);
# for n = 0 the pair (equivalence indicator, constant term) comes back
rho = rho_assemble(config, 2)
print("\nrho(2) at level 12 =", rho.value)
delta, const = rho_assemble(config, 0, X=2000)
print("n = 0: indicator %.1f, constant term %.12f (tail bound %.2e)"
      % (delta, const.value.real, const.truncation_bound))
