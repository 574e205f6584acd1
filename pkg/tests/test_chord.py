import math

import numpy as np
import pytest

from gravitunnel import (DomainError, PhysicalParams, chord_from_separation,
                         chord_path, chord_position, chord_transit_time,
                         dimensional_time, make_scaling, path_transit_time,
                         speed_at_radius)


def test_chord_from_separation_values():
    diameter = chord_from_separation(math.pi)
    assert diameter.half_chord == pytest.approx(1.0, abs=1e-15)
    assert diameter.midpoint_radius == pytest.approx(0.0, abs=1e-15)
    right = chord_from_separation(math.pi / 2)
    assert right.half_chord == pytest.approx(math.sqrt(2) / 2, rel=1e-15)
    sixty = chord_from_separation(math.pi / 3)
    assert sixty.half_chord == pytest.approx(0.5, rel=1e-15)


def test_chord_geometry_identity():
    for delta in np.linspace(1e-3, math.pi, 50):
        spec = chord_from_separation(float(delta))
        assert spec.half_chord**2 + spec.midpoint_radius**2 == pytest.approx(
            1.0, abs=1e-15)


@pytest.mark.parametrize("bad", [0.0, -0.5, math.pi + 0.2, math.nan])
def test_chord_separation_domain(bad):
    with pytest.raises(DomainError):
        chord_from_separation(bad)


def test_transit_time_is_pi_bitwise():
    for delta in (0.1, math.pi / 3, math.pi / 2, math.pi):
        assert chord_transit_time(chord_from_separation(delta)) == math.pi


def test_transit_time_earth_minutes():
    scaling = make_scaling(PhysicalParams(6.371e6, 9.80665))
    minutes = dimensional_time(chord_transit_time(chord_from_separation(1.0)),
                               scaling) / 60.0
    assert minutes == pytest.approx(42.2, abs=0.1)


def test_chord_position_values():
    assert chord_position(0.0, chord_from_separation(math.pi)) == 1.0
    assert chord_position(math.pi / 2, chord_from_separation(1.0)) == \
        pytest.approx(0.0, abs=1e-15)
    assert chord_position(math.pi, chord_from_separation(math.pi / 2)) == \
        pytest.approx(-math.sqrt(2) / 2, rel=1e-15)


def test_chord_position_conserves_energy():
    # |dx/dtau| must equal the energy speed at the instantaneous radius
    spec = chord_from_separation(2.0)
    tau = np.linspace(0.0, math.pi, 2001)
    x = chord_position(tau, spec)
    rho = np.hypot(x, spec.midpoint_radius)
    v_energy = speed_at_radius(np.clip(rho, 0.0, 1.0))
    v_motion = np.abs(spec.half_chord * np.sin(tau))
    assert np.max(np.abs(v_energy - v_motion)) < 1e-9


def test_chord_path_samples():
    diameter = chord_path(chord_from_separation(math.pi), 3)
    assert diameter.rho[0] == 1.0 and diameter.rho[-1] == 1.0
    assert diameter.rho[1] < 1e-15
    quarter = chord_path(chord_from_separation(math.pi / 2), 3)
    assert quarter.rho[1] == pytest.approx(math.cos(math.pi / 4), rel=1e-12)
    assert quarter.is_monotone_dip(tol=1e-12)
    with pytest.raises(DomainError):
        chord_path(chord_from_separation(1.0), 1)


def test_chord_path_endpoints_exact():
    for delta in (0.1, 1.0, math.pi):
        path = chord_path(chord_from_separation(delta), 101)
        assert path.rho[0] == 1.0 and path.rho[-1] == 1.0
        assert path.theta[0] == 0.0
        assert path.theta[-1] == -delta


@pytest.mark.parametrize("delta", [0.1, math.pi / 4, math.pi / 2, math.pi])
def test_quadrature_reproduces_shm_half_period(delta):
    path = chord_path(chord_from_separation(delta), 10_000)
    result = path_transit_time(path)
    assert abs(result.tau - math.pi) / math.pi < 1e-4
