"""Bracketing root refinement for oscillatory real functions.

A plain sign-change scan over a uniform grid feeds a Brent-style
bracketed refiner.  Nothing here knows about zeta; the zero finders for
Z, the spectral functions and the quantization residuals all share these
two helpers.
"""

from __future__ import annotations

import math

__all__ = ["brent", "scan_sign_changes"]

_EPS = 2.220446049250313e-16


def brent(f, a, b, xtol=1e-12, max_iter=200):
    """Root of f in [a, b] by Brent's method; f(a), f(b) must differ in sign."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        raise ValueError("brent: interval does not bracket a sign change")
    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 2.0 * _EPS * abs(b) + 0.5 * xtol
        m = 0.5 * (c - b)
        if abs(m) <= tol or fb == 0.0:
            return b
        if abs(e) < tol or abs(fa) <= abs(fb):
            d = e = m
        else:
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol else math.copysign(tol, m)
        fb = f(b)
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
    return b


def scan_sign_changes(f, t_min, t_max, step):
    """Brackets (a, b) with f(a)*f(b) < 0 on a uniform grid of the given step.

    Grid points that land exactly on a root are nudged by step/64 so the
    bracket survives.
    """
    n = max(2, int(math.ceil((t_max - t_min) / step)) + 1)
    brackets = []
    t_prev = t_min
    f_prev = f(t_prev)
    if f_prev == 0.0:
        t_prev += step / 64.0
        f_prev = f(t_prev)
    for k in range(1, n + 1):
        t = min(t_min + k * step, t_max)
        if t <= t_prev:
            break
        ft = f(t)
        if ft == 0.0:
            t += step / 64.0
            ft = f(t)
        if f_prev * ft < 0:
            brackets.append((t_prev, t))
        t_prev, f_prev = t, ft
        if t >= t_max:
            break
    return brackets
