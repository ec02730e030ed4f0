import cmath
import math

import numpy as np
import pytest

from app.errors import DomainError
from app.models import RegionSet, RegionTag
from app.numeric_core import pole_from_p
from app.regions import (
    P0_constant,
    a_n_extremal,
    cardioid_boundary,
    delta_r,
    f_zeta_series,
    feasible_r_interval,
    hankel_extremal,
    lambda1_extremal,
    lambda1_h_form,
    h_quad,
    omega_boundary,
    omega_contains,
    p0_constant,
    sample_set,
    unit_circle,
    witness_value,
    wp_sample,
    wp_witness,
)
from app.utils import random_disk_points


def test_first_coefficient_is_one(pole_half):
    assert a_n_extremal(pole_half, 0.3 - 0.2j, 1) == 1.0


def test_series_of_f_zeta_has_the_closed_coefficients(pole_half):
    zeta = cmath.exp(1j * math.pi / 3.0)
    series = f_zeta_series(pole_half, zeta, 12)
    assert series[0] == 0.0
    for n in range(1, 9):
        expected = a_n_extremal(pole_half, zeta, n)
        assert abs(series[n] - expected) < 1e-10 * max(1.0, abs(expected))


def test_lambda1_at_zeta_one(pole_half):
    assert abs(lambda1_extremal(pole_half, 1.0) + 1.0) < 1e-14


def test_functional_identities(rng):
    for p, zeta in zip(rng.uniform(0.3, 0.95, 100), random_disk_points(rng, 100)):
        pp = pole_from_p(float(p))
        zeta = complex(zeta)
        coeff_form = a_n_extremal(pp, zeta, 3) - a_n_extremal(pp, zeta, 2) ** 2
        assert abs(coeff_form - lambda1_extremal(pp, zeta)) < 1e-12
        assert abs(coeff_form - lambda1_h_form(pp, zeta)) < 1e-12
        assert abs(hankel_extremal(pp, zeta) - coeff_form) < 1e-12


def test_zeta_and_index_domain(pole_half):
    with pytest.raises(DomainError):
        a_n_extremal(pole_half, 1.5, 2)
    with pytest.raises(DomainError):
        a_n_extremal(pole_half, 0.5, 0)


def test_omega_membership_on_the_real_axis(pole_half):
    P = pole_half.P
    right = 1.0 - 4.0 / (P * P)
    assert omega_contains(pole_half, 0.0)
    assert omega_contains(pole_half, -1.0)
    assert omega_contains(pole_half, right)
    assert not omega_contains(pole_half, right + 0.01)
    assert not omega_contains(pole_half, -1.01)
    inside = omega_contains(pole_half, np.array([0.0, right + 0.01]))
    assert inside.tolist() == [True, False]


def test_omega_boundary(pole_half):
    trace = omega_boundary(pole_half, 256)
    assert trace.tag is RegionTag.omega_boundary
    assert len(trace) == 256
    assert np.all(omega_contains(pole_half, trace.points))
    assert np.all(np.abs(trace.points) <= 1.0 + 1e-9)


def test_trace_needs_enough_points(pole_half):
    with pytest.raises(DomainError):
        omega_boundary(pole_half, 8)


def test_sets_grow_as_the_pole_moves_in():
    outer = omega_boundary(pole_from_p(0.7), 512).points
    for q in (0.6, 0.5):
        assert np.all(omega_contains(pole_from_p(q), outer))


def test_cardioid_lies_in_every_omega():
    card = cardioid_boundary(512)
    assert card.tag is RegionTag.cardioid
    assert abs(card.points[0] + 1.0) < 1e-15
    for p in (0.3, 0.5, 0.7, 0.9):
        assert np.all(omega_contains(pole_from_p(p), card.points))


def test_unit_circle():
    circle = unit_circle(64)
    assert circle.tag is RegionTag.unit_circle
    assert np.allclose(np.abs(circle.points), 1.0)


def test_distance_bound():
    pp = pole_from_p(0.7)
    assert abs(delta_r(pp, 0.75) - 0.25 * (pp.P ** 2 - 3.75)) < 1e-15
    assert abs(delta_r(pp, 0.75) - 0.195204) < 1e-6
    assert delta_r(pp, 1.0) == 0.0
    with pytest.raises(DomainError):
        delta_r(pp, 1.5)


@pytest.mark.parametrize("p", [0.3, 0.7, 0.9])
def test_distance_bound_is_sharp(p):
    pp = pole_from_p(p)
    h = h_quad(pp)
    angles = 2.0 * np.pi * np.arange(256) / 256
    rim = h(np.exp(1j * angles))
    for r in (0.0, 0.25, 0.5, 0.75, 0.95):
        inner = h(r * np.exp(1j * angles))
        gaps = np.abs(rim[:, None] - inner[None, :])
        bound = delta_r(pp, r)
        assert gaps.min() >= bound - 1e-9
        # theta = psi = 0 attains it
        assert abs(gaps[0, 0] - bound) < 1e-12


def test_membership_tolerates_rounding_near_sigma_one():
    pp = pole_from_p(0.95)
    right = 1.0 - 4.0 / (pp.P * pp.P)
    # preimage error here is stretched by P^2 / (P^2 - 4), about 380
    assert omega_contains(pp, right + 5e-10)
    assert omega_contains(pp, complex(right + 5e-10, 5e-10))
    assert not omega_contains(pp, right + 1e-6)
    assert not omega_contains(pp, right + 5e-10, w_tol=0.0)


def test_witness_outside_omega():
    pp = pole_from_p(0.7)
    r, value = wp_witness(pp)
    lo, hi = feasible_r_interval(pp)
    assert lo < r < hi == 1.0
    assert value == witness_value(pp, r)
    assert abs(value - 0.1426) < 5e-4
    assert not omega_contains(pp, value)


def test_no_witness_for_small_p(pole_half):
    assert feasible_r_interval(pole_half) is None
    assert wp_witness(pole_half) is None


def test_threshold_pole():
    P0 = P0_constant()
    assert abs(3.0 * P0 * P0 - 2.0 * P0 - 12.0) < 1e-12
    p0 = p0_constant()
    assert abs(p0 + 1.0 / p0 - P0) < 1e-12
    assert abs(p0 - 0.553175) < 1e-6
    assert feasible_r_interval(pole_from_p(p0 + 0.01)) is not None
    assert feasible_r_interval(pole_from_p(p0 - 0.01)) is None


def test_wp_cloud(pole_half):
    cloud = wp_sample(pole_half)
    assert cloud.tag is RegionTag.wp_cloud
    assert len(cloud) == 32 * 64 * 16
    assert np.all(omega_contains(pole_half, cloud.points))
    # the witness is appended once it exists
    assert len(wp_sample(pole_from_p(0.7))) == 32 * 64 * 16 + 1
    with pytest.raises(DomainError):
        wp_sample(pole_half, 8, 64, 16)


def test_sample_set_dispatch(pole_half):
    assert sample_set(RegionSet.circle, None, 32).tag is RegionTag.unit_circle
    assert sample_set("cardioid", None, 32).tag is RegionTag.cardioid
    assert sample_set(RegionSet.omega, pole_half, 32).tag is RegionTag.omega_boundary
    assert len(sample_set(RegionSet.wp, pole_half, 1024)) == 64 * 128 * 16
    with pytest.raises(DomainError):
        sample_set(RegionSet.omega, None, 32)
