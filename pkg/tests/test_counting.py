import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rzspec import counting as ct
from rzspec.errors import OnZeroError, SubcriticalEnergy

SCALES = ct.ModelScales(l_x=1.0, l_p=2.0 * math.pi)


class TestSmoothCounts:
    def test_berry_keating_at_e_times_scale(self):
        s = ct.ModelScales(l_x=2.0, l_p=3.0)
        E = math.e * 6.0
        assert ct.n_berry_keating(E, s) == pytest.approx(0.875, abs=1e-13)

    def test_berry_keating_tracks_average(self):
        # with l_x l_p = 2 pi hbar the smooth count reproduces the
        # average zero count up to O(1/t)
        for t in (50.0, 100.0, 200.0):
            assert abs(ct.n_berry_keating(t, SCALES) - ct.n_average(t)) < 0.01

    def test_berry_keating_arithmetic(self):
        val = ct.n_berry_keating(50.0, SCALES)
        expect = 50.0 / (2.0 * math.pi) * (math.log(50.0 / (2.0 * math.pi)) - 1.0) + 0.875
        assert val == expect

    def test_connes_cutoff_equals_energy(self):
        s = ct.ModelScales(cutoff_lambda=math.sqrt(30.0))
        assert ct.n_connes(30.0, s) == pytest.approx(30.0 / (2.0 * math.pi), rel=1e-13)

    def test_connes_example(self):
        s = ct.ModelScales(cutoff_lambda=10.0)
        expect = math.log(100.0 / (2.0 * math.pi)) + 1.0
        assert ct.n_connes(2.0 * math.pi, s) == pytest.approx(expect, rel=1e-13)

    @given(st.floats(min_value=1.0, max_value=300.0),
           st.floats(min_value=2.0, max_value=50.0))
    def test_connes_cutoff_doubling(self, E, lam):
        a = ct.n_connes(E, ct.ModelScales(cutoff_lambda=lam))
        b = ct.n_connes(E, ct.ModelScales(cutoff_lambda=2.0 * lam))
        assert b - a == pytest.approx(E / math.pi * math.log(2.0), abs=1e-11)

    def test_requires_cutoff(self):
        with pytest.raises(ValueError):
            ct.n_connes(10.0, ct.ModelScales())

    def test_dirac_smooth_offset(self):
        for E in (10.0, 80.0):
            d = ct.n_dirac_smooth(E, SCALES) - ct.n_berry_keating(E, SCALES)
            assert d == pytest.approx(-11.0 / 8.0, abs=1e-13)

    def test_dirac_smooth_at_scale(self):
        assert ct.n_dirac_smooth(2.0 * math.pi * math.e, SCALES) == pytest.approx(-0.5, abs=1e-13)

    def test_bk2011_at_2pie(self):
        assert ct.n_bk2011(2.0 * math.pi * math.e) == pytest.approx(-4.0 / math.e, abs=1e-13)

    def test_bk2011_arithmetic(self):
        t = 100.0
        two_pi = 2.0 * math.pi
        expect = (t / two_pi * (math.log(t / two_pi) - 1.0)
                  - 8.0 * math.pi / t * math.log(t / two_pi))
        assert ct.n_bk2011(t) == expect

    def test_bk2011_vs_average(self):
        t = 300.0
        pred = -0.875 - 8.0 * math.pi / t * math.log(t / (2.0 * math.pi))
        assert (ct.n_bk2011(t) - ct.n_average(t)) == pytest.approx(pred, abs=5e-3)


class TestExactCount:
    def test_values(self):
        assert ct.n_exact(15.0) == 1.0
        assert ct.n_exact(10.0) == 0.0

    def test_on_zero_raises(self):
        with pytest.raises(OnZeroError):
            ct.n_exact(14.134725141734694)

    def test_average_oracle(self):
        # theta(100)/pi + 1 against the frozen theta oracle
        assert ct.n_average(100.0) == pytest.approx(29.002409902271817, abs=1e-9)

    def test_steps_by_one(self, zero_db):
        ts = [r.t for r in zero_db.records[:5]]
        for k, t in enumerate(ts):
            assert ct.n_exact(t - 0.05) == k
            assert ct.n_exact(t + 0.05) == k + 1


class TestClassicalOrbit:
    def test_period_inverse_cosh(self):
        s = ct.ModelScales(l_x=1.3, l_p=2.1)
        E = 2.0 * 1.3 * 2.1 * math.cosh(1.0)
        assert ct.classical_period(E, s) == pytest.approx(1.0, rel=1e-13)

    def test_period_asymptote(self):
        s = ct.ModelScales(l_x=1.0, l_p=1.0)
        E = 1e5
        assert abs(ct.classical_period(E, s) - math.log(E)) < 1e-8

    def test_subcritical(self):
        with pytest.raises(SubcriticalEnergy):
            ct.classical_period(2.0 * 2.0 * math.pi, SCALES)

    def test_energy_conservation(self):
        s = ct.ModelScales(l_x=1.0, l_p=2.0)
        E = 30.0
        p0 = ct.launch_momentum(E, s)
        T = ct.classical_period(E, s)
        for frac in (0.0, 0.1, 0.35, 0.6, 0.85, 0.999):
            x, p = ct.classical_trajectory(E, frac * T, p0, s)
            assert ct.hamiltonian(x, p, s) == pytest.approx(E, abs=1e-10)

    def test_periodicity(self):
        s = ct.ModelScales(l_x=1.0, l_p=2.0)
        E = 30.0
        p0 = ct.launch_momentum(E, s)
        T = ct.classical_period(E, s)
        x, p = ct.classical_trajectory(E, T, p0, s)
        assert abs(x - s.l_x) < 1e-8 and abs(p - p0) < 1e-8

    def test_launch_validation(self):
        with pytest.raises(ValueError):
            ct.classical_trajectory(30.0, 0.1, 1.0, ct.ModelScales(l_x=1.0, l_p=2.0))
