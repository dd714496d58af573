"""Moebius/Mertens sums and their residue expansions over zeta zeros.

The partial Dirichlet sums

    M_z(x) = sum_{n <= x} mu(n) / n^z,   z = 1/2 + iE,

are computed directly (with the half-weight convention at integer x) and
reconstructed from the contour-inversion residue series: the constant
1/zeta(z) (or the log x law when z sits on a zero), plus one term per
nontrivial zero, plus a rapidly convergent trivial-zero tail whose
zeta'(-2n) has the closed form (-1)^n zeta(2n+1) (2n)! / (2^(2n+1) pi^(2n)).
Nontrivial zeros are summed in conjugate pairs ordered by |t|, the
standard symmetric truncation of the conditionally convergent series,
which keeps the Mertens reconstruction real to roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoSimpleZero, NotAZero, OnZeroAmbiguity
from .zeta import ZeroDatabase, zeta, zeta_prime, zeta_second_prime

__all__ = [
    "moebius",
    "moebius_sieve",
    "mertens",
    "m_z_direct",
    "zeta_prime_trivial",
    "trivial_zero_term",
    "ResidueExpansionConfig",
    "m_z_perron",
    "mertens_residue",
    "mertens_residue_complex",
    "growth_fit",
    "GrowthFitReport",
    "fit_growth_sequence",
]

MOEBIUS_BUDGET = 10 ** 9

# growth_fit classification constants (calibrated, not derived)
_POWER_FLOOR = 0.12
_LOG_SLOPE_FLOOR = 0.15


def moebius(n: int) -> int:
    """Moebius mu(n) by trial factorization; 0 on a squared prime factor."""
    if n < 1 or n > MOEBIUS_BUDGET:
        raise ValueError(f"moebius defined for 1 <= n <= {MOEBIUS_BUDGET}")
    if n == 1:
        return 1
    sign = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            sign = -sign
        d += 1 if d == 2 else 2
    if n > 1:
        sign = -sign
    return sign


def moebius_sieve(n_max: int) -> np.ndarray:
    """mu(1..n_max) as an int array (index 0 unused)."""
    mu = np.ones(n_max + 1, dtype=np.int64)
    mu[0] = 0
    primes = []
    is_comp = np.zeros(n_max + 1, dtype=bool)
    for i in range(2, n_max + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > n_max:
                break
            is_comp[ip] = True
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


def mertens(x: float) -> int:
    """Mertens function sum_{n <= x} mu(n), exactly."""
    if x < 1:
        raise ValueError("mertens defined for x >= 1")
    n = int(math.floor(x))
    return int(moebius_sieve(n)[1:].sum())


def m_z_direct(x: float, E: float, primed: bool = False) -> complex:
    """Partial sum sum_{n <= x} mu(n) n^(-1/2 - iE).

    With ``primed`` the last term is half-weighted when x is an integer
    (the value the contour inversion converges to at its jump points).
    """
    if x < 1:
        raise ValueError("m_z_direct defined for x >= 1")
    n_top = int(math.floor(x + 1e-12))
    mu = moebius_sieve(n_top)
    n = np.arange(1, n_top + 1)
    w = mu[1:].astype(complex) * np.exp(-complex(0.5, E) * np.log(n))
    if primed and abs(x - n_top) < 1e-12:
        w[-1] *= 0.5
    return complex(w.sum())


_ZETA_ODD_CACHE: dict[int, float] = {}


def zeta_prime_trivial(n: int) -> float:
    """Closed form zeta'(-2n) = (-1)^n zeta(2n+1) (2n)! / (2^(2n+1) pi^(2n))."""
    if n < 1:
        raise ValueError("n >= 1")
    if n > 80:
        raise ValueError("factorial overflow beyond n = 80")
    if n not in _ZETA_ODD_CACHE:
        _ZETA_ODD_CACHE[n] = zeta(complex(2 * n + 1, 0.0)).real
    return ((-1) ** n * _ZETA_ODD_CACHE[n] * math.factorial(2 * n)
            / (2.0 ** (2 * n + 1) * math.pi ** (2 * n)))


def trivial_zero_term(x: float, E: float, n: int) -> complex:
    """Residue at s = -2n - z of the inversion integrand:
    x^(-2n-z) / (-(2n+z) zeta'(-2n)) with z = 1/2 + iE."""
    if x <= 1:
        raise ValueError("x > 1 required")
    z = complex(0.5, E)
    expo = -2.0 * n - z
    return x ** expo / (-(2.0 * n + z) * zeta_prime_trivial(n))


@dataclass
class ResidueExpansionConfig:
    """Truncation control: which zeros enter the residue sum.

    ``at_zero_mode`` selects the expansion around a point where zeta(z)
    itself vanishes (log x leading term) instead of the generic 1/zeta(z)
    constant.
    """
    zero_db: ZeroDatabase
    n_nontrivial: int = 100
    n_trivial: int = 20
    at_zero_mode: bool = False

    def __post_init__(self):
        if self.n_nontrivial > len(self.zero_db):
            raise ValueError("n_nontrivial exceeds the zero database size")
        if self.n_trivial < 0:
            raise ValueError("n_trivial must be >= 0")

    def pairs(self):
        """(rho, zeta'(rho)) for the first n_nontrivial zeros and their
        conjugates, ordered by |Im rho| ascending."""
        self.zero_db.ensure_derivatives(self.n_nontrivial)
        out = []
        for rec in self.zero_db.records[: self.n_nontrivial]:
            zp = rec.zeta_prime_at_rho
            out.append((complex(0.5, rec.t), zp))
            out.append((complex(0.5, -rec.t), zp.conjugate()))
        return out


def _nontrivial_sum(x: float, z: complex, cfg: ResidueExpansionConfig,
                    exclude_t: float | None = None) -> complex:
    acc = 0.0 + 0.0j
    for rho, zp in cfg.pairs():
        if exclude_t is not None and abs(rho - z) < 1e-6:
            continue
        acc += x ** (rho - z) / ((rho - z) * zp)
    return acc


def _trivial_sum(x: float, z: complex, n_trivial: int) -> complex:
    acc = 0.0 + 0.0j
    for n in range(1, n_trivial + 1):
        acc += x ** (-2.0 * n - z) / (-(2.0 * n + z) * zeta_prime_trivial(n))
    return acc


def m_z_perron(x: float, E: float, cfg: ResidueExpansionConfig) -> complex:
    """Residue-series reconstruction of M_z(x), z = 1/2 + iE.

    Off a zero: 1/zeta(z) + zero terms + trivial tail.  In at-zero mode
    (E within 1e-6 of a database ordinate) the s = 0 double pole gives
    log x / zeta'(z) - zeta''(z) / (2 zeta'(z)^2) instead, and the
    coinciding zero is excluded from the sum.
    """
    if x <= 1:
        raise ValueError("x > 1 required")
    z = complex(0.5, E)
    if cfg.at_zero_mode:
        ts = cfg.zero_db.ordinates()
        if not len(ts) or np.min(np.abs(ts - E)) > 1e-6:
            raise NotAZero(f"E = {E:g} is not within 1e-6 of a database ordinate")
        zp = zeta_prime(z)
        if abs(zp) < 1e-8:
            raise NoSimpleZero(f"zeta'({z}) ~ 0; multiple zero not supported")
        zpp = zeta_second_prime(z)
        head = math.log(x) / zp - zpp / (2.0 * zp * zp)
        tail = _nontrivial_sum(x, z, cfg, exclude_t=E)
    else:
        zv = zeta(z)
        if abs(zv) < 1e-8:
            raise OnZeroAmbiguity(
                f"|zeta(z)| = {abs(zv):.2e} at E = {E:g}: use at_zero_mode")
        head = 1.0 / zv
        tail = _nontrivial_sum(x, z, cfg)
    return head + tail + _trivial_sum(x, z, cfg.n_trivial)


def mertens_residue_complex(x: float, cfg: ResidueExpansionConfig) -> complex:
    """Untruncated-imaginary version of :func:`mertens_residue`."""
    if x <= 1:
        raise ValueError("x > 1 required")
    acc = -2.0 + 0.0j
    for rho, zp in cfg.pairs():
        acc += x ** rho / (rho * zp)
    for n in range(1, cfg.n_trivial + 1):
        acc += x ** (-2.0 * n) / (-2.0 * n * zeta_prime_trivial(n))
    return acc


def mertens_residue(x: float, cfg: ResidueExpansionConfig) -> float:
    """Residue-series reconstruction of the Mertens function:
    -2 + sum over zero pairs of x^rho/(rho zeta'(rho)) + trivial tail.

    Non-integer x recommended (the direct sum jumps at integers).
    """
    return mertens_residue_complex(x, cfg).real


# --------------------------------------------------------------------------
# growth diagnostics
# --------------------------------------------------------------------------

@dataclass
class GrowthFitReport:
    """Least-squares growth diagnostics of |M_z(n)| over a range of n."""
    log_slope: float
    log_intercept: float
    power_exponent: float
    mean_abs: float
    classification: str
    power_floor: float = _POWER_FLOOR
    log_slope_floor: float = _LOG_SLOPE_FLOOR


def _block_maxima(ns, vals, n_blocks=8):
    # oscillation-robust envelope: max |value| per geometric block
    edges = np.geomspace(ns.min(), ns.max() * (1.0 + 1e-9), n_blocks + 1)
    bn, bv = [], []
    for a, b in zip(edges, edges[1:]):
        m = (ns >= a) & (ns < b)
        if m.any():
            bv.append(vals[m].max())
            bn.append(math.exp(float(np.log(ns[m]).mean())))
    return np.array(bn), np.array(bv)


def fit_growth_sequence(ns, values) -> GrowthFitReport:
    """Fit |values| against log n (slope) and log-log (power exponent).

    Both fits run on block maxima (the oscillation envelope), which keeps
    the dips of an oscillating sequence from wrecking the log-log
    regression.  Classification: bounded-like when the fitted growth
    across the range is small against the level; power-growth-like when
    the log-log exponent clears the floor and the power model beats the
    linear-in-log model in linear-space residuals; log-growth-like
    otherwise.
    """
    ns = np.asarray(ns, dtype=float)
    vals = np.abs(np.asarray(values, dtype=complex))
    bn, bv = _block_maxima(ns, vals)
    A = np.vstack([np.log(bn), np.ones_like(bn)]).T
    (log_slope, log_intercept), *_ = np.linalg.lstsq(A, bv, rcond=None)
    (power_exponent, log_c), *_ = np.linalg.lstsq(A, np.log(np.maximum(bv, 1e-300)),
                                                  rcond=None)
    mean_abs = float(vals.mean())
    rms_lin = float(np.sqrt(np.mean((bv - (A @ np.array([log_slope, log_intercept]))) ** 2)))
    rms_pow = float(np.sqrt(np.mean((bv - math.exp(log_c) * bn ** power_exponent) ** 2)))
    fitted_growth = abs(log_slope) * math.log(bn.max() / bn.min())
    if fitted_growth < _LOG_SLOPE_FLOOR * float(bv.mean()):
        cls = "bounded-like"
    elif power_exponent > _POWER_FLOOR and rms_pow <= rms_lin:
        cls = "power-growth-like"
    else:
        cls = "log-growth-like"
    return GrowthFitReport(float(log_slope), float(log_intercept),
                           float(power_exponent), mean_abs, cls)


def growth_fit(E: float, n_range) -> GrowthFitReport:
    """Growth diagnostics of the partial sums M_z(n) at height E.

    ``n_range`` is an iterable of integer cutoffs (ascending).
    """
    ns = sorted(int(n) for n in n_range)
    if not ns or ns[0] < 2:
        raise ValueError("n_range must contain integers >= 2")
    mu = moebius_sieve(ns[-1])
    n = np.arange(1, ns[-1] + 1)
    terms = mu[1:].astype(complex) * np.exp(-complex(0.5, E) * np.log(n))
    csum = np.cumsum(terms)
    vals = [csum[k - 1] for k in ns]
    return fit_growth_sequence(ns, vals)
