"""Shared independent oracles for the test suite.

These deliberately avoid the package's own quadrature and closed forms:
bisection for roots, scipy's QUADPACK for integrals, high-order finite
differences for derivatives.
"""

import numpy as np
from scipy.integrate import quad


def bisect_root(f, lo, hi, iterations=200):
    flo = f(lo)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if flo * f(mid) <= 0.0:
            hi = mid
        else:
            lo, flo = mid, f(mid)
    return 0.5 * (lo + hi)


def fd4(f, x, h):
    """Fourth-order central finite difference of f at x (scalar or array)."""
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def quad_slope_sweep(k):
    """Surface sweep 2 * integral of the slope field, by QUADPACK.

    Uses the substitution rho = rho_m + u^2 so the turnaround inverse
    square root disappears before quad sees it.
    """
    rm = k / np.hypot(k, 1.0)

    def integrand(u):
        rho = rm + u * u
        return (2.0 * k * np.sqrt((1.0 - rho) * (1.0 + rho))
                / (rho * np.sqrt((k * k + 1.0) * (rho + rm))))

    val, _ = quad(integrand, 0.0, np.sqrt(1.0 - rm), limit=200,
                  epsabs=1e-13, epsrel=1e-13)
    return 2.0 * val


def quad_half_time(k):
    """Half transit time by QUADPACK under the same two substitutions."""
    rm = k / np.hypot(k, 1.0)
    rho_c = 0.5 * (1.0 + rm)

    def upper(alpha):
        rho = np.sin(alpha)
        return rho / np.sqrt((k * k + 1.0) * (rho - rm) * (rho + rm))

    def lower(u):
        rho = rm + u * u
        return (2.0 * rho / (np.sqrt((k * k + 1.0) * (rho + rm))
                             * np.sqrt((1.0 - rho) * (1.0 + rho))))

    hi, _ = quad(upper, np.arcsin(rho_c), np.pi / 2, limit=200,
                 epsabs=1e-13, epsrel=1e-13)
    lo, _ = quad(lower, 0.0, np.sqrt(rho_c - rm), limit=200,
                 epsabs=1e-13, epsrel=1e-13)
    return hi + lo


def quad_half_length(k):
    """Half arc length by QUADPACK with the turnaround substitution."""
    rm = k / np.hypot(k, 1.0)

    def integrand(u):
        rho = rm + u * u
        return 2.0 * rho / np.sqrt((k * k + 1.0) * (rho + rm))

    val, _ = quad(integrand, 0.0, np.sqrt(1.0 - rm), limit=200,
                  epsabs=1e-13, epsrel=1e-13)
    return val
