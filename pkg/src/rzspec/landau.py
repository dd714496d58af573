"""Lowest-Landau-level realization: wavefunctions and box quantization.

The even/odd wavefunctions are Gaussian-damped confluent hypergeometric
functions of the complex combination (x - iy)^2 / (2 l^2); placing the
particle in a box of side L and identifying the outgoing/incoming edges
turns the critical-line phase into the quantization condition

    2 theta(E) - E log(L^2 / (2 pi l^2)) = 0  (mod 2 pi),

whose roots are the levels.  The level count reproduces the cutoff
counting formula with Lambda = L / l.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MissedZeroError
from .roots import brent
from .specfun import kummer_m_bounded, kummer_m_grid
from .zeta import theta_rs

__all__ = [
    "LandauGeometry",
    "psi_plus",
    "psi_minus",
    "psi_abs_grid",
    "quantization_residual",
    "landau_levels",
    "n_landau",
]


@dataclass(frozen=True)
class LandauGeometry:
    """Magnetic length l and box size L (L >> l for the counting regime)."""
    magnetic_length: float = 1.0
    box_size: float = 100.0

    def __post_init__(self):
        if self.magnetic_length <= 0 or self.box_size <= 0:
            raise ValueError("lengths must be positive")

    @property
    def log_cutoff(self) -> float:
        # log(L^2 / (2 pi l^2))
        return math.log(self.box_size ** 2 / (2.0 * math.pi * self.magnetic_length ** 2))


def _z_arg(x: float, y: float, g: LandauGeometry) -> complex:
    w = complex(x, -y) / g.magnetic_length
    return 0.5 * w * w


def psi_plus(E: float, x: float, y: float, g: LandauGeometry) -> complex:
    """Even-sector wavefunction e^{-x^2/2l^2} M(1/4 + iE/2, 1/2, (x-iy)^2/2l^2),
    normalization constant set to 1."""
    m, _ = kummer_m_bounded(complex(0.25, 0.5 * E), 0.5, _z_arg(x, y, g))
    return math.exp(-0.5 * (x / g.magnetic_length) ** 2) * m


def psi_minus(E: float, x: float, y: float, g: LandauGeometry) -> complex:
    """Odd-sector wavefunction (x - iy) e^{-x^2/2l^2} M(3/4 + iE/2, 3/2, ...)."""
    m, _ = kummer_m_bounded(complex(0.75, 0.5 * E), 1.5, _z_arg(x, y, g))
    return complex(x, -y) * math.exp(-0.5 * (x / g.magnetic_length) ** 2) * m


def psi_abs_grid(E: float, xs, ys, g: LandauGeometry, odd: bool = False):
    """|psi| on the tensor grid xs x ys, plus certified absolute error bounds.

    Cells whose series cancellation exhausts the working precision do not
    raise; their (small) bound column lets callers exclude them rigorously
    from, e.g., a ridge search.  Returns arrays of shape (len(xs), len(ys)).
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    W = (X - 1j * Y) / g.magnetic_length
    Z = 0.5 * W * W
    a = complex(0.75, 0.5 * E) if odd else complex(0.25, 0.5 * E)
    b = 1.5 if odd else 0.5
    M, bound = kummer_m_grid(a, b, Z)
    gauss = np.exp(-0.5 * (X / g.magnetic_length) ** 2)
    pref = np.abs(W * g.magnetic_length) if odd else 1.0
    return np.abs(M) * gauss * pref, bound * gauss * pref


def quantization_residual(E: float, g: LandauGeometry) -> float:
    """Box-quantization phase 2 theta(E) - E log(L^2/2 pi l^2), reduced
    mod 2 pi to (-pi, pi]; levels are its zeros."""
    w = 2.0 * theta_rs(E) - E * g.log_cutoff
    r = math.remainder(w, 2.0 * math.pi)
    if r <= -math.pi:
        r += 2.0 * math.pi
    return r


def _phase(E: float, g: LandauGeometry) -> float:
    return 2.0 * theta_rs(E) - E * g.log_cutoff


def n_landau(E: float, g: LandauGeometry) -> float:
    """Smooth level count (E/2 pi) log(L^2/2 pi l^2) + 1 - (theta(E)/pi + 1)."""
    return E / (2.0 * math.pi) * g.log_cutoff - theta_rs(E) / math.pi


def landau_levels(E_max: float, g: LandauGeometry) -> list[float]:
    """Positive roots of the quantization condition below E_max.

    The unreduced phase is continuous, so roots are located as crossings
    of integer multiples of 2 pi -- no spurious branch-cut roots.  The
    root count is reconciled with ``n_landau`` to +-1.
    """
    if E_max <= 0:
        raise ValueError("E_max must be positive")
    # local level spacing ~ 2 pi / |d phase/dE|; sample well below it
    grid = [1e-9]
    E = 1e-9
    while E < E_max:
        dphi = abs(2.0 * _theta_prime_est(E) - g.log_cutoff) + 0.5
        E = min(E_max, E + min(0.5, 0.8 * math.pi / dphi))
        grid.append(E)
    roots = []
    w_prev = _phase(grid[0], g)
    for a, b in zip(grid, grid[1:]):
        w_next = _phase(b, g)
        k_lo = math.ceil(min(w_prev, w_next) / (2.0 * math.pi))
        k_hi = math.floor(max(w_prev, w_next) / (2.0 * math.pi))
        for k in range(k_lo, k_hi + 1):
            f = lambda t, k2pi=2.0 * math.pi * k: _phase(t, g) - k2pi
            if f(a) == 0.0 or f(a) * f(b) > 0:
                continue
            roots.append(brent(f, a, b, xtol=1e-10))
        w_prev = w_next
    roots = sorted(r for r in roots if r > 1e-8)
    expected = n_landau(E_max, g)
    if abs(len(roots) - expected) > 1.0 + 1e-9:
        raise MissedZeroError(
            f"{len(roots)} levels below E={E_max:g} vs smooth count {expected:.3f}")
    return roots


def _theta_prime_est(E: float) -> float:
    # asymptotic slope of theta, floored for small E
    return 0.5 * math.log(max(E, 2.0 * math.pi) / (2.0 * math.pi))
