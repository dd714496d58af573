import math

import numpy as np
import pytest

from rzspec import landau
from rzspec.landau import LandauGeometry
from rzspec.zeta import theta_rs

GEOM = LandauGeometry(magnetic_length=1.0, box_size=100.0)
FIRST_ROOT = 0.53260437203513055
SECOND_ROOT = 1.1788967506616517


class TestWavefunctions:
    def test_even_at_origin(self):
        assert landau.psi_plus(17.3, 0.0, 0.0, GEOM) == 1.0

    def test_odd_at_origin(self):
        assert landau.psi_minus(17.3, 0.0, 0.0, GEOM) == 0.0

    def test_real_section_conjugate_pair(self):
        # on the x axis the argument is real, so |psi(x, 0)| = |psi(-x, 0)|
        a = abs(landau.psi_plus(5.0, 2.5, 0.0, GEOM))
        b = abs(landau.psi_plus(5.0, -2.5, 0.0, GEOM))
        assert a == pytest.approx(b, rel=1e-12)

    def test_ridge_tracks_classical_hyperbola(self):
        xs = np.linspace(-10.0, 10.0, 200)
        amp, bound = landau.psi_abs_grid(10.0, xs, xs, GEOM)
        i, j = np.unravel_index(np.argmax(amp), amp.shape)
        x0, y0 = xs[i], xs[j]
        dist = abs(x0 * y0 - 10.0) / math.hypot(x0, y0)
        assert dist < 0.5
        # certified bounds: no excluded cell can challenge the argmax
        assert np.all(amp + bound <= amp[i, j] + bound[i, j] + amp[i, j] * 1e-9)

    def test_grid_matches_scalar(self):
        xs = np.array([0.5, 3.0])
        amp, _ = landau.psi_abs_grid(7.0, xs, xs, GEOM)
        for i, x in enumerate(xs):
            for j, y in enumerate(xs):
                assert amp[i, j] == pytest.approx(
                    abs(landau.psi_plus(7.0, float(x), float(y), GEOM)), rel=1e-11)


class TestQuantization:
    def test_residual_at_zero_energy(self):
        assert landau.quantization_residual(0.0, GEOM) == 0.0

    def test_residual_range(self):
        for e in np.linspace(0.1, 25.0, 57):
            r = landau.quantization_residual(float(e), GEOM)
            assert -math.pi < r <= math.pi

    def test_phase_slope_large_e(self):
        # d/dE of the unreduced phase approaches log(E/2pi) - log(L^2/2pi l^2)
        E, h = 50.0, 1e-4
        slope = (2.0 * theta_rs(E + h) - (E + h) * GEOM.log_cutoff
                 - 2.0 * theta_rs(E - h) + (E - h) * GEOM.log_cutoff) / (2.0 * h)
        pred = math.log(E / (2.0 * math.pi)) - GEOM.log_cutoff
        assert slope == pytest.approx(pred, abs=5e-3)

    def test_first_roots(self):
        lv = landau.landau_levels(2.0, GEOM)
        assert lv[0] == pytest.approx(FIRST_ROOT, abs=1e-9)
        assert lv[1] == pytest.approx(SECOND_ROOT, abs=1e-9)

    def test_residual_sign_change_across_roots(self):
        lv = landau.landau_levels(10.0, GEOM)
        assert all(b > a for a, b in zip(lv, lv[1:]))
        for r in lv:
            lo = landau.quantization_residual(r - 1e-4, GEOM)
            hi = landau.quantization_residual(r + 1e-4, GEOM)
            assert lo * hi < 0

    def test_count_matches_smooth(self):
        lv = landau.landau_levels(20.0, GEOM)
        assert abs(len(lv) - round(landau.n_landau(20.0, GEOM))) <= 1

    def test_spacing_near_10(self):
        lv = landau.landau_levels(13.0, GEOM)
        near = [v for v in lv if 8.0 < v < 12.0]
        pred = 2.0 * math.pi / (GEOM.log_cutoff - math.log(10.0 / (2.0 * math.pi)))
        for gap in np.diff(near):
            assert gap == pytest.approx(pred, rel=0.1)

    def test_missing_level_identity(self):
        # smooth count minus the raw cutoff term is exactly -theta(E)/pi,
        # negative once theta turns positive (E above ~17.85)
        for E in (3.0, 12.5, 20.0):
            lhs = landau.n_landau(E, GEOM) - E / (2.0 * math.pi) * GEOM.log_cutoff
            assert lhs == pytest.approx(-theta_rs(E) / math.pi, abs=1e-9)
        assert landau.n_landau(20.0, GEOM) - 20.0 / (2.0 * math.pi) * GEOM.log_cutoff < 0.0
