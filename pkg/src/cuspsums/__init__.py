"""Kloosterman sums at pairs of Atkin-Lehner cusps of Gamma0(N), cusp
classification with exact surd arithmetic, and Fourier coefficients of
Eisenstein series at those cusps."""

from .arith import (CoprimeSplit, Factorization, coprime_split, crt, divisors,
                    egcd_inv, euler_phi, factorize, inverse_mod, moebius,
                    multiplicative_functions, square_part, unit_circle)
from .characters import (DirichletCharacter, LValue, UnitGroup,
                         character_group, decompose_crt, gauss_sum, induce,
                         l_truncated, principal_character, unit_group)
from .cusps import (Cusp, CuspData, SurdMatrix, cusp_data, cusps_equivalent,
                    is_equivalent, is_singular, normalize, representatives,
                    scaling_atkin_lehner, scaling_general,
                    stabilizer_generator)
from .doublecoset import (DoubleCosetRep, ModulusSet, al_reps,
                          kloosterman_oracle, mixed_reps, modulus_set,
                          oracle_al, oracle_mixed)
from .eisenstein import (EisensteinCoefficient, EisensteinConfig,
                         SupportDecomposition, eisenstein_config, n_support,
                         phi_closed, phi_direct, rho_assemble,
                         truncation_bound)
from .kloosterman import (ALPairConfig, KloostermanValue,
                          ResidueIdentityReport, al_pair_config, classical,
                          front_factor, ramanujan, residue_identity_check,
                          specialization, theorem_al_pair, twisted_inf_inf)

__version__ = "0.1.0"
