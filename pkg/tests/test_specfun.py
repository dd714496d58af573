import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rzspec.errors import PoleError, ToleranceNotMet
from rzspec.specfun import (
    KUMMER_RADIUS,
    QuadratureSpec,
    bessel_k_complex_order,
    kummer_m,
    kummer_m_bounded,
    kummer_m_grid,
    log_gamma,
)

# frozen high-precision oracle values (mpmath, 30 digits)
LOGGAMMA_QUARTER_5I = complex(-7.3370880842091811, 2.6565750329571056)
K_HALF_7I_2PI = complex(1.3935871058549974e-5, 1.0473149412003543e-5)
M_EXAMPLE = complex(1.0949105136486249, 4.0249315749327309)


class TestLogGamma:
    def test_gamma_one(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)

    def test_gamma_half(self):
        assert log_gamma(0.5).real == pytest.approx(0.5 * math.log(math.pi), abs=1e-14)
        assert log_gamma(0.5).imag == 0.0

    def test_oracle_quarter_plus_5i(self):
        assert abs(log_gamma(0.25 + 5j) - LOGGAMMA_QUARTER_5I) < 1e-12

    @pytest.mark.parametrize("z", [0.0, -1.0, -7.0])
    def test_poles(self, z):
        with pytest.raises(PoleError):
            log_gamma(z)

    @given(st.complex_numbers(min_magnitude=0.01, max_magnitude=40.0,
                              allow_infinity=False, allow_nan=False))
    def test_recurrence_right_half_plane(self, z):
        z = complex(abs(z.real) + 0.05, z.imag)
        d = log_gamma(z + 1.0) - log_gamma(z) - cmath.log(z)
        k = round(d.imag / (2.0 * math.pi))
        assert abs(d - 2j * math.pi * k) < 1e-10

    def test_conjugate_symmetry(self):
        z = 0.3 + 11.0j
        assert log_gamma(z.conjugate()) == log_gamma(z).conjugate()


class TestBesselK:
    def test_half_order_closed_form(self):
        v = bessel_k_complex_order(0.5, 1.0)
        assert v.real == pytest.approx(math.sqrt(math.pi / 2.0) * math.exp(-1.0), rel=1e-13)
        assert v.imag == 0.0

    def test_order_reflection(self):
        a = bessel_k_complex_order(0.5 + 7j, 2.0 * math.pi)
        b = bessel_k_complex_order(-0.5 - 7j, 2.0 * math.pi)
        assert a == b

    def test_oracle_half_plus_7i(self):
        v = bessel_k_complex_order(0.5 + 7j, 2.0 * math.pi)
        assert abs(v - K_HALF_7I_2PI) < 1e-10 * abs(K_HALF_7I_2PI)

    @pytest.mark.parametrize("z", [1.0, 2.0 * math.pi, 10.0])
    def test_symmetry_grid(self, z):
        for t in np.linspace(0.0, 50.0, 11):
            nu = complex(0.5, 0.5 * t)
            a = bessel_k_complex_order(nu, z)
            b = bessel_k_complex_order(-nu, z)
            assert abs(a - b) <= 1e-12 * max(abs(a), 1.0)

    @given(st.floats(min_value=0.0, max_value=60.0),
           st.sampled_from([1.0, 2.0 * math.pi, 5.0]))
    def test_conjugation(self, t, z):
        nu = complex(0.5, 0.5 * t)
        a = bessel_k_complex_order(nu.conjugate(), z)
        b = bessel_k_complex_order(nu, z).conjugate()
        assert abs(a - b) <= 1e-12 * max(abs(b), 1e-300)

    def test_asymptotic_envelope(self):
        # K_(1/2+it/2)(2 pi) ~ sqrt(pi/t) (t/2pi)^(1/2) e^(-pi t/4); the
        # 3% tolerance at t = 200 is calibrated (measured deviation 2.6%),
        # and the deviation must shrink with t.
        def ratio(t):
            env = math.sqrt(math.pi / t) * math.sqrt(t / (2.0 * math.pi)) * math.exp(-math.pi * t / 4.0)
            return abs(bessel_k_complex_order(complex(0.5, 0.5 * t), 2.0 * math.pi)) / env
        d100 = abs(ratio(100.0) - 1.0)
        d200 = abs(ratio(200.0) - 1.0)
        assert d200 < 0.03
        assert d200 < d100

    def test_truncation_budget_error(self):
        with pytest.raises(ToleranceNotMet):
            bessel_k_complex_order(0.5, 0.01, QuadratureSpec(max_abscissa=2.0))


class TestKummer:
    def test_at_zero(self):
        assert kummer_m(0.25 + 5j, 0.5, 0.0) == 1.0

    def test_exponential_case(self):
        z = 1.0 + 2.0j
        assert abs(kummer_m(1.0, 1.0, z) - cmath.exp(z)) < 1e-13 * abs(cmath.exp(z))

    def test_oracle_example(self):
        v = kummer_m(0.25 + 5j, 0.5, 1.0 + 2.0j)
        assert abs(v - M_EXAMPLE) < 1e-12 * abs(M_EXAMPLE)

    @pytest.mark.parametrize("b", [0.0, -1.0, -6.0])
    def test_pole_in_b(self, b):
        with pytest.raises(PoleError):
            kummer_m(1.0, b, 0.5)

    def test_budget_radius(self):
        with pytest.raises(ToleranceNotMet):
            kummer_m(0.25, 0.5, 250.0)

    def test_cancellation_raises(self):
        with pytest.raises(ToleranceNotMet):
            kummer_m(0.25 + 5j, 0.5, 1.0 - 99.0j)

    def test_certified_bound_covers_error(self):
        # the 1-99j cell is out of budget, but the bound must say so
        v, bound = kummer_m_bounded(0.25 + 5j, 0.5, 1.0 - 99.0j)
        assert bound > 1e3 * max(abs(v), 1.0) or bound > 1e6

    @given(st.complex_numbers(max_magnitude=12.0, allow_nan=False, allow_infinity=False))
    def test_kummer_transformation(self, z):
        a, b = 0.25 + 2.5j, 0.5
        lhs = kummer_m(a, b, z)
        rhs = cmath.exp(z) * kummer_m(b - a, b, -z)
        assert abs(lhs - rhs) < 1e-10 * max(abs(lhs), 1.0)

    def test_grid_matches_scalar(self):
        zs = np.array([0.3 + 0.4j, -2.0 + 1.0j, 5.0j])
        vals, bounds = kummer_m_grid(0.25 + 5j, 0.5, zs)
        for z, v in zip(zs, vals):
            assert abs(kummer_m(0.25 + 5j, 0.5, complex(z)) - v) < 1e-12 * max(abs(v), 1.0)
        assert np.all(bounds >= 0)
        assert KUMMER_RADIUS >= 200.0


class TestQuadratureSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(node_count=8)
        with pytest.raises(ValueError):
            QuadratureSpec(target_abs_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_abscissa=-1.0)


class TestBesselKSweep:
    def test_adversarial_bands_against_oracle(self):
        # crossover |Im nu| ~ z, small z, generic, and the deep-decay band
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        rng = np.random.default_rng(42)
        worst = 0.0
        for _ in range(30):
            band = rng.integers(0, 4)
            if band == 0:
                z = rng.uniform(0.5, 15.0)
                mu = z * rng.uniform(0.85, 1.15)
            elif band == 1:
                z = rng.uniform(0.05, 1.0)
                mu = rng.uniform(0.0, 30.0)
            elif band == 2:
                z = rng.uniform(1.0, 30.0)
                mu = rng.uniform(0.0, 100.0)
            else:
                z = 2.0 * math.pi
                mu = rng.uniform(60.0, 100.0)
            nu = complex(rng.choice([0.5, 2.25]), mu)
            ref = complex(mp.besselk(mp.mpc(nu.real, nu.imag), mp.mpf(z)))
            rel = abs(bessel_k_complex_order(nu, z) - ref) / abs(ref)
            worst = max(worst, rel)
        assert worst < 1e-9
