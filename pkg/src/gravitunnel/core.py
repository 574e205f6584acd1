"""Shared physics of frictionless motion inside a uniform-density sphere.

Everything in this package is computed dimensionless.  Lengths are
measured in units of the sphere radius R, times in units of sqrt(R/g)
and speeds in units of sqrt(g*R), where g is the gravitational
acceleration at the surface.  In these units the interior field pulls
inward with magnitude rho (linear in radius), the potential energy per
unit mass is -(1 - rho^2)/2 with its zero on the surface, and a particle
released at rest on the surface moves with speed sqrt(1 - rho^2)
wherever a frictionless tunnel takes it, because its total energy is
exactly zero.

Physical units enter only at the boundary of the library, through
`make_scaling` and `dimensional_time`.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Values this close to a domain boundary are clamped onto it instead of
# rejected; quadrature nodes and root finders land arbitrarily close.
DOMAIN_EPS = 1e-12


def _unit_interval(value, name):
    """Validate value(s) against [0, 1], clamping DOMAIN_EPS overshoot."""
    arr = np.asarray(value, dtype=float)
    bad = (arr < -DOMAIN_EPS) | (arr > 1.0 + DOMAIN_EPS) | ~np.isfinite(arr)
    if np.any(bad):
        offender = float(np.ravel(arr[bad])[0])
        raise DomainError(f"{name} must lie in [0, 1]; got {offender!r}")
    clipped = np.clip(arr, 0.0, 1.0)
    return float(clipped) if arr.ndim == 0 else clipped


@dataclass(frozen=True)
class PhysicalParams:
    """Sphere radius (m) and surface gravity (m/s^2) of a physical body."""

    radius_m: float
    gravity_m_s2: float

    def __post_init__(self):
        for name, value in (("radius_m", self.radius_m),
                            ("gravity_m_s2", self.gravity_m_s2)):
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be a positive finite number; "
                                  f"got {value!r}")


@dataclass(frozen=True)
class Scaling:
    """Conversion factors between dimensionless and physical quantities."""

    time_unit_s: float
    speed_unit_m_s: float
    length_unit_m: float


@dataclass(frozen=True)
class PolarPoint:
    """A point of the tunnel plane: dimensionless radius and polar angle."""

    rho: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "rho", _unit_interval(self.rho, "rho"))
        object.__setattr__(self, "theta", float(self.theta))


@dataclass(frozen=True)
class DiscretePath:
    """Ordered polar samples of a tunnel, normally surface to surface.

    ``rho`` and ``theta`` are equal-length float arrays (read-only) and
    ``min_index`` marks the deepest sample.  Paths produced by the library
    constructors dip monotonically to a single interior minimum and rise
    back; arbitrary point lists (e.g. perturbed paths) need not.
    """

    rho: np.ndarray
    theta: np.ndarray
    min_index: int

    @classmethod
    def from_arrays(cls, rho, theta):
        rho = _unit_interval(np.atleast_1d(np.asarray(rho, dtype=float)), "rho")
        theta = np.array(theta, dtype=float).reshape(-1)
        if rho.shape != theta.shape:
            raise DomainError("rho and theta must have the same length")
        if rho.size < 2:
            raise DomainError("a path needs at least 2 points")
        if not np.all(np.isfinite(theta)):
            raise DomainError("theta samples must be finite")
        rho = rho.copy()
        theta = theta.copy()
        rho.setflags(write=False)
        theta.setflags(write=False)
        return cls(rho=rho, theta=theta, min_index=int(np.argmin(rho)))

    @classmethod
    def from_points(cls, points):
        pts = list(points)
        return cls.from_arrays([p.rho for p in pts], [p.theta for p in pts])

    @property
    def points(self):
        return [PolarPoint(r, t) for r, t in zip(self.rho, self.theta)]

    def __len__(self):
        return self.rho.size

    def xy(self):
        """Cartesian coordinates of the samples in the tunnel plane."""
        return self.rho * np.cos(self.theta), self.rho * np.sin(self.theta)

    def chord_lengths(self):
        x, y = self.xy()
        return np.hypot(np.diff(x), np.diff(y))

    def cumulative_arclength(self):
        return np.concatenate(([0.0], np.cumsum(self.chord_lengths())))

    def endpoint_separation(self):
        return abs(float(self.theta[-1] - self.theta[0]))

    def is_monotone_dip(self, tol=1e-12):
        """True if rho falls monotonically to min_index and rises after."""
        d = np.diff(self.rho)
        return bool(np.all(d[:self.min_index] <= tol)
                    and np.all(d[self.min_index:] >= -tol))


def make_scaling(params: PhysicalParams) -> Scaling:
    """Build the dimensionless-to-physical conversion for a body.

    time unit = sqrt(R/g), speed unit = sqrt(g*R), length unit = R;
    the product of the first two reproduces the third to round-off.
    """
    if not isinstance(params, PhysicalParams):
        params = PhysicalParams(*params)
    return Scaling(time_unit_s=math.sqrt(params.radius_m / params.gravity_m_s2),
                   speed_unit_m_s=math.sqrt(params.gravity_m_s2 * params.radius_m),
                   length_unit_m=params.radius_m)


def speed_at_radius(rho):
    """Dimensionless speed sqrt(1 - rho^2) of a surface-released particle.

    Exactly zero at rho = 1.  Accepts scalars or arrays.
    """
    rho = _unit_interval(rho, "rho")
    return np.sqrt((1.0 - rho) * (1.0 + rho))


def potential_per_mass(rho):
    """Interior potential per unit mass, -(1 - rho^2)/2, zero at the surface."""
    rho = _unit_interval(rho, "rho")
    return -0.5 * (1.0 - rho) * (1.0 + rho)


def radial_acceleration(rho):
    """Radial acceleration -rho: inward, linear in radius, -1 at the surface."""
    rho = _unit_interval(rho, "rho")
    return -rho


def latitude_to_polar(lat):
    """Polar angle theta = pi/2 - lambda for a surface point at latitude lambda."""
    arr = np.asarray(lat, dtype=float)
    if np.any(~np.isfinite(arr) | (arr < -math.pi / 2 - DOMAIN_EPS)
              | (arr > math.pi / 2 + DOMAIN_EPS)):
        raise DomainError("latitude must lie in [-pi/2, pi/2] radians")
    out = math.pi / 2 - np.clip(arr, -math.pi / 2, math.pi / 2)
    return float(out) if arr.ndim == 0 else out


def dimensional_time(tau, scaling: Scaling):
    """Convert a dimensionless time to seconds using a body's scaling."""
    arr = np.asarray(tau, dtype=float) * scaling.time_unit_s
    return float(arr) if arr.ndim == 0 else arr
