import numpy as np
import pytest

from app.coeff_bodies import c_from_sigma, realize_boundary
from app.concave_rep import (
    a23_from_c,
    coefficients_from_fprime,
    concave_coeffs_from_phi,
    fprime_series,
    lambda_mu,
    lambda_mu_from_c,
    lambda_mu_from_sigma,
    lambda_mu_two_paths,
    schwarzian_at_zero,
)
from app.errors import DomainError, MembershipError
from app.models import CoeffPair, SchurPair
from app.series import PowerSeries
from app.utils import random_disk_points


def test_identity_map_gives_the_extremal_coefficients(pole3):
    # phi(z) = z, so f' = (1 - z^2) / (1 - P z + z^2)^2
    fp = fprime_series(pole3, PowerSeries.variable(64))
    a = coefficients_from_fprime(fp)
    assert abs(a.a2 - 3.0) < 1e-13
    assert abs(a.a3 - 8.0) < 1e-12
    assert abs(schwarzian_at_zero(fp) / 6.0 + 1.0) < 1e-12
    closed = a23_from_c(pole3, CoeffPair(c0=0.0, c1=1.0))
    assert abs(closed.a2 - a.a2) < 1e-13
    assert abs(closed.a3 - a.a3) < 1e-12


def test_phi_must_fix_the_pole(pole_half):
    with pytest.raises(DomainError):
        fprime_series(pole_half, PowerSeries.constant(0.0, 64))
    with pytest.raises(DomainError):
        fprime_series(pole_half, PowerSeries.variable(8), order=16)


@pytest.mark.parametrize(
    "s",
    [SchurPair(-0.6 + 0.8j, 0.0), SchurPair(0.3 + 0.2j, 1j), SchurPair(-0.4j, -1.0)],
)
def test_series_and_closed_form_agree(pole_half, s):
    phi = realize_boundary(pole_half, s, order=96)
    series_coeffs = concave_coeffs_from_phi(pole_half, phi)
    closed = a23_from_c(pole_half, c_from_sigma(pole_half, s))
    assert abs(series_coeffs.a2 - closed.a2) < 1e-8
    assert abs(series_coeffs.a3 - closed.a3) < 1e-8
    fp = fprime_series(pole_half, phi)
    assert abs(lambda_mu(series_coeffs, 1.0) - schwarzian_at_zero(fp) / 6.0) < 1e-8


def test_a23_rejects_points_off_the_body(pole3):
    with pytest.raises(MembershipError):
        a23_from_c(pole3, CoeffPair(c0=1.0 / 3.0, c1=1.0 / 9.0 + 2.0 / 3.0))


def test_functional_in_all_coordinates(pole3, rng):
    s0s = random_disk_points(rng, 40)
    s1s = random_disk_points(rng, 40)
    for mu in (-0.5, 0.0, 0.4, 1.0, 2.0):
        for s0, s1 in zip(s0s, s1s):
            s = SchurPair(complex(s0), complex(s1))
            via_sigma, via_a = lambda_mu_two_paths(pole3, s, mu)
            assert abs(via_sigma - via_a) < 1e-11
            assert abs(lambda_mu_from_c(pole3, c_from_sigma(pole3, s), mu) - via_a) < 1e-11


def test_functional_at_the_centre(pole3):
    # sigma = (0, 0): a3 - mu a2^2 = P^2 - 2 - mu (P - 1/P)^2
    assert abs(lambda_mu_from_sigma(pole3, SchurPair(0.0, 0.0), 0.5) - (7.0 - 0.5 * (8.0 / 3.0) ** 2)) < 1e-13


def test_sigma_form_broadcasts(pole3):
    s0 = np.array([0.0, 0.5, -0.5j])
    out = lambda_mu_from_sigma(pole3, SchurPair(s0, np.zeros(3)), 0.5)
    assert out.shape == (3,)
    assert abs(out[0] - lambda_mu_from_sigma(pole3, SchurPair(0.0, 0.0), 0.5)) < 1e-15
