"""Tests for Eisenstein-series Fourier coefficients at cusp pairs."""

import cmath
import math

import mpmath

from cuspsums.cusps import is_equivalent
from cuspsums.eisenstein import (eisenstein_config, n_support, phi_closed,
                                 phi_direct, rho_assemble, truncation_bound)

CONFIGS = ((1, 1, 1), (6, 2, 3), (6, 3, 2), (12, 3, 2), (12, 4, 3),
           (8, 8, 4), (9, 9, 3), (2, 1, 1), (4, 4, 2))


def _sigma_power(n, t):
    return sum(d ** t for d in range(1, abs(n) + 1) if n % d == 0)


def test_enumerate_and_factored_series_agree():
    for N, r, w in CONFIGS:
        cfg = eisenstein_config(N, r, w, 1.5)
        for n in (-3, -1, 0, 1, 2, 6):
            a = phi_direct(cfg, n, 15, mode="enumerate")
            b = phi_direct(cfg, n, 15, mode="factored")
            assert abs(a.value - b.value) < 1e-12
            assert a.truncation_bound == b.truncation_bound


def test_closed_form_within_truncation_bound():
    for N, r, w in CONFIGS:
        for u in (1.25, 1.5, 2.0):
            cfg = eisenstein_config(N, r, w, u)
            for n in (-2, -1, 1, 2, 3, 6):
                closed = phi_closed(cfg, n)
                near = phi_direct(cfg, n, 10 ** 5)
                assert abs(closed.value - near.value) \
                    <= near.truncation_bound + 1e-6


def test_unsupported_frequencies_vanish():
    cfg = eisenstein_config(8, 8, 4, 1.5)
    assert n_support(cfg, 1) == "unsupported"
    assert n_support(cfg, 3) == "unsupported"
    dec = n_support(cfg, 2)
    assert dec.required_divisor == 2 and dec.k == 1
    assert n_support(cfg, -6).k == -3
    assert phi_closed(cfg, 1).value == 0j
    near = phi_direct(cfg, 1, 24, mode="enumerate")
    assert abs(near.value) <= near.truncation_bound + 1e-6


def test_constant_term_has_no_support_decomposition():
    cfg = eisenstein_config(6, 2, 3, 1.5)
    for fn in (n_support, phi_closed):
        try:
            fn(cfg, 0)
            assert False, "n = 0 must be rejected"
        except ValueError:
            pass


def test_level_one_coefficients_are_divisor_sums():
    for u in (1.25, 1.5, 2.0):
        cfg = eisenstein_config(1, 1, 1, u)
        zeta = complex(mpmath.zeta(2 * u))
        for n in (-4, -1, 1, 2, 3, 6):
            want = _sigma_power(n, 1 - 2 * u) / zeta
            assert abs(phi_closed(cfg, n).value - want) < 1e-8


def test_level_one_constant_term():
    # sum over c of phi(c) c^(-2u) = zeta(2u-1)/zeta(2u); at u = 1.25 that
    # ratio is zeta(1.5)/zeta(2.5) = 1.9473724663...
    cfg = eisenstein_config(1, 1, 1, 1.25)
    near = phi_direct(cfg, 0, 10 ** 5)
    assert abs(near.value - 1.9473724663) <= near.truncation_bound + 1e-6


def test_local_completion_is_required_when_shared_primes_remain():
    # the naive Ramanujan split is only valid when the inner Ramanujan
    # modulus contributes no primes to the outer sum; dropping the local
    # completion must break exactly those configurations
    cfg = eisenstein_config(2, 1, 1, 1.25)   # shared prime 2 remains
    near = phi_direct(cfg, 1, 10 ** 5)
    good = phi_closed(cfg, 1)
    bad = phi_closed(cfg, 1, complete_local_factors=False)
    assert abs(good.value - near.value) <= near.truncation_bound + 1e-6
    assert abs(bad.value - near.value) > 10 * near.truncation_bound
    cfg = eisenstein_config(6, 2, 3, 1.25)   # nothing shared: both agree
    for n in (1, 2, -3):
        a = phi_closed(cfg, n).value
        b = phi_closed(cfg, n, complete_local_factors=False).value
        assert abs(a - b) < 1e-10


def test_variant_choices_coincide():
    for N, r, w in CONFIGS:
        cfg = eisenstein_config(N, r, w, 1.5)
        for n in (1, 2, -1):
            a = phi_closed(cfg, n, variant="v").value
            b = phi_closed(cfg, n, variant="wprime").value
            assert a == b


def test_truncation_bound_shrinks():
    cfg = eisenstein_config(12, 3, 2, 1.5)
    bounds = [truncation_bound(cfg, X) for X in (1, 2, 5, 10, 100)]
    assert all(b > 0 for b in bounds)
    assert all(x > y for x, y in zip(bounds, bounds[1:]))
    zero = phi_direct(cfg, 1, 0)
    assert zero.value == 0j and zero.truncation_bound > 0


def test_rho_assembly():
    cfg = eisenstein_config(6, 2, 3, 1.25)
    phi = phi_closed(cfg, 1).value
    rho = rho_assemble(cfg, 1)
    assert abs(rho.value - phi * math.pi ** 1.25 / math.gamma(1.25)) < 1e-12
    rho2 = rho_assemble(cfg, -2)
    want = phi_closed(cfg, -2).value * math.pi ** 1.25 \
        / math.gamma(1.25) * 2.0 ** 0.25
    assert abs(rho2.value - want) < 1e-12
    # n = 0 returns the equivalence indicator and the constant term
    delta, const = rho_assemble(cfg, 0, X=200)
    assert delta == (1.0 if is_equivalent(6, 2, 3) else 0.0)
    assert const.method.startswith("direct")
    assert abs(const.value.imag) < 1e-12
    try:
        rho_assemble(eisenstein_config(6, 2, 3, 6.0), 1)
        assert False, "large Re(u) must be refused"
    except ValueError:
        pass


def test_config_validation():
    for bad_u in (1.0, 0.5, complex(1.0, 3.0)):
        try:
            eisenstein_config(6, 2, 3, bad_u)
            assert False, "Re(u) <= 1 must be rejected"
        except ValueError:
            pass
    try:
        eisenstein_config(12, 2, 1, 1.5)
        assert False, "non-unitary r must be rejected"
    except ValueError:
        pass
