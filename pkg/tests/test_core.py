import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from gravitunnel import (DiscretePath, DomainError, PhysicalParams,
                         PolarPoint, dimensional_time, latitude_to_polar,
                         make_scaling, potential_per_mass,
                         radial_acceleration, speed_at_radius)

EARTH = PhysicalParams(radius_m=6.371e6, gravity_m_s2=9.80665)


def test_make_scaling_unit_sphere():
    s = make_scaling(PhysicalParams(1.0, 1.0))
    assert s.time_unit_s == 1.0
    assert s.speed_unit_m_s == 1.0
    assert s.length_unit_m == 1.0


def test_make_scaling_perfect_squares():
    s = make_scaling(PhysicalParams(4.0, 1.0))
    assert s.time_unit_s == 2.0
    assert s.speed_unit_m_s == 2.0


def test_make_scaling_earth():
    # sqrt(6.371e6 / 9.80665), frozen from direct evaluation
    s = make_scaling(EARTH)
    assert s.time_unit_s == pytest.approx(806.0156321612119, rel=1e-12)


@pytest.mark.parametrize("radius,gravity", [(0.0, 9.8), (-1.0, 9.8),
                                            (6e6, 0.0), (6e6, -9.8),
                                            (math.nan, 9.8)])
def test_params_validation(radius, gravity):
    with pytest.raises(DomainError):
        PhysicalParams(radius, gravity)


def test_scaling_product_identity():
    for params in (EARTH, PhysicalParams(1.0, 1.0), PhysicalParams(3.39e6, 3.71),
                   PhysicalParams(0.5, 123.0)):
        s = make_scaling(params)
        product = s.time_unit_s * s.speed_unit_m_s
        assert abs(product - s.length_unit_m) <= 4 * math.ulp(s.length_unit_m)


def test_speed_at_radius_values():
    assert speed_at_radius(1.0) == 0.0
    assert speed_at_radius(0.0) == 1.0
    assert speed_at_radius(0.6) == pytest.approx(0.8, abs=1e-15)


def test_speed_clamps_and_rejects():
    assert speed_at_radius(1.0 + 1e-13) == 0.0
    for bad in (-0.1, 1.1, math.nan):
        with pytest.raises(DomainError):
            speed_at_radius(bad)


def test_potential_values():
    assert potential_per_mass(1.0) == 0.0
    assert potential_per_mass(0.0) == -0.5
    assert potential_per_mass(0.6) == pytest.approx(-0.32, abs=1e-15)


def test_radial_acceleration_values():
    assert radial_acceleration(0.0) == 0.0
    assert radial_acceleration(1.0) == -1.0
    assert radial_acceleration(0.5) == -0.5


def test_energy_identity_on_grid():
    rho = np.linspace(0.0, 1.0, 1001)
    total = 0.5 * speed_at_radius(rho) ** 2 + potential_per_mass(rho)
    assert np.max(np.abs(total)) < 1e-12


def test_acceleration_is_negative_potential_gradient():
    rho = np.linspace(1e-3, 1.0 - 1e-3, 1000)
    h = 1e-6
    grad = (potential_per_mass(rho + h) - potential_per_mass(rho - h)) / (2 * h)
    assert np.max(np.abs(-grad - radial_acceleration(rho))) < 1e-6


def test_latitude_to_polar():
    assert latitude_to_polar(math.pi / 2) == 0.0
    assert latitude_to_polar(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert latitude_to_polar(math.pi / 6) == pytest.approx(math.pi / 3, rel=1e-14)
    with pytest.raises(DomainError):
        latitude_to_polar(2.0)


def test_latitude_to_polar_is_decreasing_bijection():
    lats = np.linspace(-math.pi / 2, math.pi / 2, 501)
    thetas = latitude_to_polar(lats)
    assert np.all(np.diff(thetas) < 0)
    assert thetas[0] == pytest.approx(math.pi, rel=1e-15)
    assert thetas[-1] == 0.0
    # defining relation at the surface: cos(theta) = sin(latitude)
    assert np.max(np.abs(np.cos(thetas) - np.sin(lats))) < 1e-15


def test_dimensional_time():
    s = make_scaling(EARTH)
    # pi * sqrt(R/g), frozen; the classic "about 42 minutes"
    t = dimensional_time(math.pi, s)
    assert t == pytest.approx(2532.1727886761964, rel=1e-12)
    assert 42.0 < t / 60.0 < 42.5
    assert dimensional_time(0.0, s) == 0.0
    assert dimensional_time(1.0, make_scaling(PhysicalParams(1, 1))) == 1.0


def test_polar_point_validation():
    p = PolarPoint(1.0 + 1e-13, 0.3)
    assert p.rho == 1.0
    with pytest.raises(DomainError):
        PolarPoint(1.5, 0.0)


class TestDiscretePath:
    def test_from_arrays_basics(self):
        path = DiscretePath.from_arrays([1.0, 0.5, 1.0], [0.0, -0.5, -1.0])
        assert len(path) == 3
        assert path.min_index == 1
        assert path.endpoint_separation() == 1.0
        assert path.is_monotone_dip()

    def test_arrays_are_read_only(self):
        path = DiscretePath.from_arrays([1.0, 0.5, 1.0], [0.0, -0.5, -1.0])
        with pytest.raises(ValueError):
            path.rho[0] = 0.0

    def test_rejects_bad_input(self):
        with pytest.raises(DomainError):
            DiscretePath.from_arrays([1.0], [0.0])
        with pytest.raises(DomainError):
            DiscretePath.from_arrays([1.0, 0.5], [0.0])
        with pytest.raises(DomainError):
            DiscretePath.from_arrays([1.0, 1.2], [0.0, -0.5])
        with pytest.raises(DomainError):
            DiscretePath.from_arrays([1.0, 0.5], [0.0, math.inf])

    def test_xy_and_arclength(self):
        path = DiscretePath.from_arrays([1.0, 0.0, 1.0], [0.0, -0.1, -math.pi])
        x, y = path.xy()
        assert x[0] == 1.0 and abs(y[0]) == 0.0
        s = path.cumulative_arclength()
        assert s[0] == 0.0
        assert s[-1] == pytest.approx(2.0, rel=1e-15)

    def test_not_monotone_dip(self):
        path = DiscretePath.from_arrays([1.0, 0.4, 0.6, 0.3, 1.0],
                                        [0.0, -0.2, -0.4, -0.6, -0.8])
        assert not path.is_monotone_dip()

    def test_points_property_roundtrip(self):
        path = DiscretePath.from_arrays([1.0, 0.5, 1.0], [0.0, -0.5, -1.0])
        again = DiscretePath.from_points(path.points)
        assert np.array_equal(again.rho, path.rho)
        assert np.array_equal(again.theta, path.theta)


def test_pure_functions_are_thread_safe():
    rho = np.linspace(0.0, 1.0, 10001)
    expected = speed_at_radius(rho)
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda _: speed_at_radius(rho), range(16)))
    for r in results:
        assert np.array_equal(r, expected)
