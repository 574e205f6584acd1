"""Closed-form family of minimum-time tunnels through a uniform sphere.

Write the trajectory as theta(rho) and measure time in units of
sqrt(R/g).  The transit-time integrand sqrt(1 + rho^2 theta'^2) /
sqrt(1 - rho^2) does not involve theta itself, so the momentum conjugate
to theta,

    k = rho^2 theta' / (sqrt(1 - rho^2) sqrt(1 + rho^2 theta'^2)),

is constant along every minimizer.  Solving for the slope gives the
one-parameter field

    theta'(rho) = sqrt(1 - rho^2) / (rho sqrt(((k^2+1)/k^2) rho^2 - 1)),

whose denominator vanishes at the minimum radius

    rho_m = k / sqrt(k^2 + 1).

Each k >= 0 selects one family member: the tunnel leaves the surface
radially, flattens out at rho_m where the slope diverges, and returns to
the surface as the mirror image of its first half.  The slope integrates
in closed form to

    theta(rho) = -atan( sqrt(1-rho^2) / sqrt(((k^2+1)/k^2) rho^2 - 1) )
                 + rho_m * asin( sqrt(k^2+1) * sqrt(1-rho^2) ),

with theta(1) = 0 and theta(rho_m) = (rho_m - 1) pi/2, so the full
surface-to-surface sweep is pi (1 - rho_m).  The arcsine coefficient
rho_m is forced: differentiating with any other constant (in particular
k) fails to reproduce the slope field.  The minimum radius and the
coefficient are both pinned by independent numerics in the test suite
(bisection on the slope denominator; finite differences and direct
quadrature of the antiderivative).

k = 0 is admitted by continuity as the degenerate through-center member
(the straight diameter), which keeps `family_from_separation` total on
separations up to and including pi.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import DOMAIN_EPS, DiscretePath
from .errors import DomainError


def rho_min(k: float) -> float:
    """Minimum radius k / sqrt(k^2 + 1) reached by the family member k."""
    k = float(k)
    if not (math.isfinite(k) and k >= 0.0):
        raise DomainError(f"k must be a finite number >= 0; got {k!r}")
    return k / math.hypot(k, 1.0)


def theta_prime(rho, k: float):
    """Slope d theta / d rho of the family member k, for rho in (rho_m, 1].

    Positive and finite on the open interval; tends to 0 at the surface
    and diverges at the minimum radius.  Accepts scalar or array rho.
    """
    k = float(k)
    if not (math.isfinite(k) and k > 0.0):
        raise DomainError(f"theta_prime needs k > 0; got {k!r}")
    rm = rho_min(k)
    arr = np.asarray(rho, dtype=float)
    if np.any(arr <= rm) or np.any(arr > 1.0 + DOMAIN_EPS):
        offender = float(np.ravel(arr[(arr <= rm) | (arr > 1.0 + DOMAIN_EPS)])[0])
        raise DomainError("theta_prime is defined for rho_min < rho <= 1 "
                          f"(rho_min = {rm!r}); got rho = {offender!r}")
    arr = np.clip(arr, rm, 1.0)
    u = np.sqrt((1.0 - arr) * (1.0 + arr))
    # (k^2+1) rho^2 - k^2 factored to avoid cancellation near rho_m
    w = np.sqrt((k * k + 1.0) * (arr - rm) * (arr + rm)) / k
    out = u / (arr * w)
    return float(out) if np.ndim(rho) == 0 else out


def theta_of_rho(rho, k: float):
    """Polar angle of the family member k at radius rho, with theta(1) = 0.

    Antiderivative of -theta_prime along descending rho: theta decreases
    from 0 at the surface to (rho_m - 1) pi/2 at the minimum radius.  For
    the degenerate k = 0 diameter the angle is 0 above the center and
    -pi/2 (the symmetry bisector) at the center itself.
    """
    k = float(k)
    if not (math.isfinite(k) and k >= 0.0):
        raise DomainError(f"k must be a finite number >= 0; got {k!r}")
    rm = rho_min(k)
    arr = np.asarray(rho, dtype=float)
    if np.any(arr < rm - DOMAIN_EPS) or np.any(arr > 1.0 + DOMAIN_EPS):
        bad = (arr < rm - DOMAIN_EPS) | (arr > 1.0 + DOMAIN_EPS)
        offender = float(np.ravel(arr[bad])[0])
        raise DomainError("theta_of_rho is defined for rho_min <= rho <= 1 "
                          f"(rho_min = {rm!r}); got rho = {offender!r}")
    arr = np.clip(arr, rm, 1.0)
    if k == 0.0:
        out = np.where(arr > 0.0, 0.0, -math.pi / 2.0)
        return float(out) if np.ndim(rho) == 0 else out
    u = np.sqrt((1.0 - arr) * (1.0 + arr))
    w = np.sqrt((k * k + 1.0) * (arr - rm) * (arr + rm)) / k
    # the arcsine of sqrt(k^2+1)*u evaluated as atan2: its sine and cosine
    # (sqrt(k^2+1) u, k w) form an exact unit pair, so no clamping is
    # needed and the vertical arcsine slope at the turnaround is harmless
    out = -np.arctan2(u, w) + rm * np.arctan2(math.sqrt(k * k + 1.0) * u,
                                              k * w)
    return float(out) if np.ndim(rho) == 0 else out


def separation_angle(k: float) -> float:
    """Total angle pi (1 - rho_m) swept between the two surface endpoints."""
    return math.pi * (1.0 - rho_min(k))


@dataclass(frozen=True)
class BrachFamily:
    """One member of the minimum-time tunnel family.

    k is the conserved momentum, rho_min the turnaround radius and
    separation_angle the surface sweep; the three are locked together by
    rho_min = k/sqrt(k^2+1) and separation_angle = pi (1 - rho_min).
    """

    k: float
    rho_min: float
    separation_angle: float

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k >= 0.0):
            raise DomainError(f"k must be >= 0; got {self.k!r}")
        if not (0.0 <= self.rho_min < 1.0):
            raise DomainError(f"rho_min must lie in [0, 1); got {self.rho_min!r}")
        if not (0.0 < self.separation_angle <= math.pi):
            raise DomainError("separation_angle must lie in (0, pi]; got "
                              f"{self.separation_angle!r}")
        if (abs(self.rho_min - self.k / math.hypot(self.k, 1.0)) > 1e-9
                or abs(self.separation_angle - math.pi * (1.0 - self.rho_min)) > 1e-9):
            raise DomainError("inconsistent family fields; build with "
                              "from_momentum or from_separation")

    @classmethod
    def from_momentum(cls, k: float) -> "BrachFamily":
        rm = rho_min(k)
        return cls(k=float(k), rho_min=rm, separation_angle=math.pi * (1.0 - rm))

    @classmethod
    def from_separation(cls, delta_theta: float) -> "BrachFamily":
        delta_theta = float(delta_theta)
        if not (math.isfinite(delta_theta) and 0.0 < delta_theta <= math.pi):
            raise DomainError("separation must lie in (0, pi]; got "
                              f"{delta_theta!r}")
        rm = 1.0 - delta_theta / math.pi
        if rm <= 0.0:
            return cls(k=0.0, rho_min=0.0, separation_angle=math.pi)
        k = rm / math.sqrt((1.0 - rm) * (1.0 + rm))
        return cls(k=k, rho_min=rm, separation_angle=delta_theta)


def family_from_separation(delta_theta: float) -> BrachFamily:
    """Family member whose surface endpoints are delta_theta apart."""
    return BrachFamily.from_separation(delta_theta)


def sample_path(family: BrachFamily, n: int) -> DiscretePath:
    """Sample one full tunnel as 2n-1 polar points.

    The first half descends from (1, 0) to the minimum radius along the
    closed form; the second half is its mirror image about the bisector,
    ending at (1, -separation_angle).  Samples are uniform in the angle
    alpha with rho = sin(alpha), which clusters points quadratically near
    the zero-speed release and keeps discrete time estimates accurate.
    """
    n = int(n)
    if n < 2:
        raise DomainError(f"sample_path needs n >= 2 samples per half; got {n}")
    if not isinstance(family, BrachFamily):
        raise DomainError("sample_path expects a BrachFamily")
    k, rm = family.k, family.rho_min
    if k == 0.0:
        rho_half = np.linspace(1.0, 0.0, n)
        theta_half = np.zeros(n)
        theta_half[-1] = -math.pi / 2.0
    else:
        alphas = np.linspace(math.pi / 2.0, math.asin(rm), n)
        rho_half = np.sin(alphas)
        rho_half[0] = 1.0
        rho_half[-1] = rm
        theta_half = np.asarray(theta_of_rho(rho_half, k), dtype=float)
        theta_half[0] = 0.0
    theta_mid = theta_half[-1]
    rho = np.concatenate((rho_half, rho_half[-2::-1]))
    theta = np.concatenate((theta_half, 2.0 * theta_mid - theta_half[-2::-1]))
    return DiscretePath.from_arrays(rho, theta)


def rho_at_theta(family: BrachFamily, theta):
    """Radius of the tunnel at polar angle theta in [-separation_angle, 0].

    Inverts the closed form by bracketed root finding; angles past the
    bisector use the mirror symmetry.  For the k = 0 diameter every
    interior angle maps to the center.
    """
    k, rm, sep = family.k, family.rho_min, family.separation_angle
    arr = np.asarray(theta, dtype=float)
    if np.any(arr > DOMAIN_EPS) or np.any(arr < -sep - DOMAIN_EPS):
        raise DomainError("theta must lie in [-separation_angle, 0]")
    arr = np.clip(arr, -sep, 0.0)
    mid = -sep / 2.0
    folded = np.where(arr < mid, 2.0 * mid - arr, arr)

    def solve_one(target):
        if k == 0.0:
            return 1.0 if target >= -DOMAIN_EPS else 0.0
        if target >= -1e-15:
            return 1.0
        if target <= mid + 1e-15:
            return rm
        return brentq(lambda r: theta_of_rho(r, k) - target, rm, 1.0,
                      xtol=1e-15, rtol=8.9e-16)

    out = np.array([solve_one(t) for t in np.ravel(folded)]).reshape(arr.shape)
    return float(out) if np.ndim(theta) == 0 else out


def arc_length(family: BrachFamily, cfg=None) -> float:
    """Tunnel length 2 * integral of sqrt(1 + rho^2 theta'^2) d rho.

    Evaluated by the singular quadrature in `timing`; 2 for the k = 0
    diameter and strictly longer than the straight chord otherwise.
    """
    from . import timing
    return 2.0 * timing.arc_integral(family, "length", cfg)
