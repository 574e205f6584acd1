"""Straight-tunnel baseline: the classic gravity train.

Projecting the interior force -rho r_hat onto any straight chord of the
sphere gives simple harmonic motion with unit angular frequency in
dimensionless units, so the one-way trip takes exactly pi no matter
which two surface points the chord connects.  These chords are the
benchmark the curved minimum-time tunnels have to beat.

Chord endpoints follow the same convention as the curved family: the
release point sits at (rho=1, theta=0) and the destination at
(rho=1, theta=-separation_angle), so chord and tunnel samples can be fed
to the same integrators and plotted on the same axes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import DiscretePath
from .errors import DomainError


@dataclass(frozen=True)
class ChordSpec:
    """Geometry of one straight surface-to-surface chord.

    half_chord = sin(separation_angle/2) is half the chord's length and
    midpoint_radius = cos(separation_angle/2) its closest approach to the
    center; the two are cosine/sine of the same angle, so their squares
    sum to one.
    """

    separation_angle: float
    half_chord: float
    midpoint_radius: float

    def __post_init__(self):
        if not (0.0 < self.separation_angle <= math.pi):
            raise DomainError("separation_angle must lie in (0, pi]; got "
                              f"{self.separation_angle!r}")


def chord_from_separation(delta_theta: float) -> ChordSpec:
    """Chord between two surface points a central angle delta_theta apart."""
    delta_theta = float(delta_theta)
    if not (math.isfinite(delta_theta) and 0.0 < delta_theta <= math.pi):
        raise DomainError("chord separation must lie in (0, pi]; got "
                          f"{delta_theta!r}")
    return ChordSpec(separation_angle=delta_theta,
                     half_chord=math.sin(delta_theta / 2.0),
                     midpoint_radius=math.cos(delta_theta / 2.0))


def chord_transit_time(spec: ChordSpec) -> float:
    """One-way transit time of any chord: pi, half the oscillation period.

    Returned as the exact constant; the quadrature route that must agree
    with it is exercised separately through `timing.path_transit_time`.
    """
    if not isinstance(spec, ChordSpec):
        raise DomainError("chord_transit_time expects a ChordSpec")
    return math.pi


def chord_position(tau, spec: ChordSpec):
    """Along-chord coordinate x(tau) = half_chord * cos(tau).

    Measured from the chord midpoint, for release from rest at one end at
    tau = 0.  Accepts scalar or array tau.
    """
    arr = spec.half_chord * np.cos(np.asarray(tau, dtype=float))
    return float(arr) if arr.ndim == 0 else arr


def chord_path(spec: ChordSpec, n: int) -> DiscretePath:
    """Sample the straight chord as n points in polar coordinates.

    Points are spaced uniformly along the chord from (1, 0) to
    (1, -separation_angle); both endpoints sit exactly on the surface.
    """
    if not isinstance(spec, ChordSpec):
        raise DomainError("chord_path expects a ChordSpec")
    n = int(n)
    if n < 2:
        raise DomainError(f"chord_path needs n >= 2 samples; got {n}")
    end = -spec.separation_angle
    t = np.linspace(0.0, 1.0, n)
    x = (1.0 - t) * 1.0 + t * math.cos(end)
    y = t * math.sin(end)
    rho = np.hypot(x, y)
    theta = np.arctan2(y, x)
    rho[0] = 1.0
    rho[-1] = 1.0
    theta[0] = 0.0
    theta[-1] = end
    return DiscretePath.from_arrays(rho, theta)
