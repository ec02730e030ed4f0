import math

import numpy as np
import pytest

from app.concave_rep import lambda_mu_from_sigma
from app.errors import InternalInconsistencyError
from app.fekete_szego import (
    abc_from,
    branch_regions,
    extremal_pair,
    phi_closed,
    phi_oracle,
    phi_via_y,
    psi_sqrt,
    scan_thresholds,
    thresholds,
)
from app.models import PhiBranch, ProofRegion
from app.numeric_core import SpecialPoly, eval_special_poly, p_from_P
from app.verify import continuity_gap, is_unimodal

MU3_MINUS_AT_3 = (1341.0 - math.sqrt(20169.0)) / 1568.0
MU3_PLUS_AT_3 = (1341.0 + math.sqrt(20169.0)) / 1568.0
MU4_AT_3 = (205.0 + math.sqrt(5737.0)) / 288.0


def test_quadratic_coefficients_at_mu_zero(pole3):
    q = abc_from(pole3, 0.0)
    assert (q.a, q.b, q.c) == (63.0, 9.0, 0.0)
    assert phi_via_y(pole3, 0.0) == 8.0


def test_thresholds_at_three(pole3):
    th = thresholds(pole3)
    assert abs(th.mu1 - 7.0 / 18.0) < 1e-14
    assert abs(th.mu1prime - 11.0 / 14.0) < 1e-14
    assert th.mu2 == th.mu1prime
    assert th.has_mu3
    assert abs(th.mu3minus - MU3_MINUS_AT_3) < 1e-12
    assert abs(th.mu3plus - MU3_PLUS_AT_3) < 1e-12
    assert abs(th.mu4 - MU4_AT_3) < 1e-12
    assert abs(th.muA - 63.0 / 64.0) < 1e-14
    assert abs(th.muB - 9.0 / 16.0) < 1e-14
    # pole-side counterparts of P* and P2
    assert abs(th.p_star + 1.0 / th.p_star - th.P_star) < 1e-12
    assert abs(th.p_2 + 1.0 / th.p_2 - th.P_2) < 1e-12
    assert 0.0 < th.p_star < th.p_2 < 1.0


def test_thresholds_are_roots(pole3):
    th = thresholds(pole3)
    assert abs(eval_special_poly(SpecialPoly.H, pole3, th.mu0minus)) < 1e-9
    assert abs(eval_special_poly(SpecialPoly.H, pole3, th.mu0plus)) < 1e-9
    assert abs(eval_special_poly(SpecialPoly.F, pole3, th.mu3minus)) < 1e-9
    assert abs(eval_special_poly(SpecialPoly.F, pole3, th.mu3plus)) < 1e-9
    assert abs(eval_special_poly(SpecialPoly.G, pole3, th.mu4plus)) < 1e-9
    assert abs(eval_special_poly(SpecialPoly.G, pole3, th.mu4minus)) < 1e-9


def test_no_mu3_below_p2(pole_half):
    th = thresholds(pole_half)
    assert pole_half.P == 2.5
    assert not th.has_mu3
    assert th.mu3plus is None


@pytest.mark.parametrize(
    "mu, expected, branch",
    [
        (0.0, 8.0, PhiBranch.linear_low),
        (0.5, -8.0 + 625.0 / 54.0, PhiBranch.rational_mid),
        (0.9, 1.1, PhiBranch.psi_linear),
        (0.96, 0.84 * math.sqrt(5.16 / 5.9904), PhiBranch.psi_sqrt),
        (1.0, 1.0, PhiBranch.linear_high),
        (1.1, 1.9, PhiBranch.linear_high),
    ],
)
def test_phi_examples_at_three(pole3, mu, expected, branch):
    value, got = phi_closed(pole3, mu)
    assert got is branch
    assert abs(value - expected) < 1e-12


def test_phi_sqrt_example_rounded(pole3):
    assert abs(phi_closed(pole3, 0.96)[0] - 0.779608) < 1e-6
    assert abs(phi_closed(pole3, 0.5)[0] - 3.574074) < 1e-6


def test_phi_endpoints():
    for P in (2.2, 3.0, 7.5):
        pp = p_from_P(P)
        assert abs(phi_closed(pp, 0.0)[0] - (P * P - 1.0)) < 1e-12
        assert abs(phi_closed(pp, 1.0)[0] - 1.0) < 1e-12


@pytest.mark.parametrize("P", [2.2, 2.5, 2.86, 3.0, 5.0])
def test_closed_form_matches_quadratic_maximum(P):
    pp = p_from_P(P)
    for mu in np.arange(-0.5, 1.5, 0.05):
        assert abs(phi_closed(pp, float(mu))[0] - phi_via_y(pp, float(mu))) < 1e-10


@pytest.mark.parametrize("mu", [0.0, 0.5, 0.9, 0.96, 1.1])
def test_oracle_matches_closed_form(pole3, mu):
    assert abs(phi_oracle(pole3, mu) - phi_closed(pole3, mu)[0]) < 1e-4


def test_extremal_pair_attains_the_bound(pole3):
    mu = 0.96
    s = extremal_pair(pole3, mu)
    assert abs(abs(s.sigma1) - 1.0) < 1e-12
    assert abs(abs(lambda_mu_from_sigma(pole3, s, mu)) - phi_closed(pole3, mu)[0]) < 1e-4


def test_every_branch_is_reached():
    seen = set()
    for P in (2.1, 2.5, 2.83, 2.89, 3.0, 4.0, 8.0):
        pp = p_from_P(P)
        th = thresholds(pp)
        for mu in np.arange(-0.5, 1.5, 0.005):
            seen.add(phi_closed(pp, float(mu), th)[1])
    assert seen == set(PhiBranch)


def test_unimodal_in_mu(pole3):
    th = thresholds(pole3)
    values = [phi_closed(pole3, float(mu), th)[0] for mu in np.arange(-0.5, 1.5, 0.005)]
    assert is_unimodal(values)
    # the minimum sits inside the square-root branch, below Phi(1) = 1
    k = int(np.argmin(values))
    assert phi_closed(pole3, float(np.arange(-0.5, 1.5, 0.005)[k]))[1] is PhiBranch.psi_sqrt
    assert values[k] < 0.76


def test_is_unimodal():
    assert is_unimodal([3.0, 2.0, 1.0, 2.0])
    assert is_unimodal([1.0, 2.0])
    assert not is_unimodal([1.0, 2.0, 1.5])
    assert not is_unimodal([2.0, 2.0, 3.0])


@pytest.mark.parametrize("P", [2.1, 2.5, 2.85, 3.0, 4.0, 10.0])
def test_branches_join_continuously(P):
    assert continuity_gap(P) < 1e-9


@pytest.mark.parametrize(
    "mu, region",
    [(0.9, ProofRegion.d1), (0.974, ProofRegion.d3), (0.98, ProofRegion.d2), (0.5, ProofRegion.outside)],
)
def test_proof_regions_at_three(pole3, mu, region):
    assert branch_regions(pole3, mu) is region


def test_sqrt_branch_guard():
    with pytest.raises(InternalInconsistencyError):
        psi_sqrt(3.0, 0.99)


def test_scan_rows():
    rows = scan_thresholds(2.5, 3.0, 0.1)
    assert len(rows) == 6
    assert abs(rows[-1].P - 3.0) < 1e-12
    assert rows[0].mu3m is None
    assert rows[-1].mu3p is not None
    assert abs(rows[-1].mu4 - MU4_AT_3) < 1e-9
