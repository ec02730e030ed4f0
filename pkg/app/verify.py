from __future__ import annotations

import math
from collections import Counter
from typing import Callable, Dict, List, Tuple

import numpy as np

from . import coeff_bodies, concave_rep, fekete_szego, quad_max, regions
from .models import BoundaryClass, PhiBranch, QuadCoeffs, SchurPair, SuiteReport, VerifySuite
from .numeric_core import constants, p_from_P, pole_from_p
from .utils import DEFAULT_SEED, get_logger, make_rng, random_circle_points, random_disk_points

PHI_P_VALUES = (2.1, 2.5, 2.83, 2.89, 3.0, 4.0, 8.0)
PHI_MU_RANGE = (-0.5, 1.5)
WITNESS_P_PRESENT = (0.56, 0.6, 0.7, 0.8)
WITNESS_P_ABSENT = (0.3, 0.4, 0.5, 0.55)
NESTING_P = (0.3, 0.5, 0.7, 0.9)


class Verifier:
    """Closed forms checked against oracles and identities, one report per suite."""

    def __init__(
        self,
        samples: int = 1000,
        seed: int = DEFAULT_SEED,
        quad_grid: Tuple[int, int] = (801, 2048),
        phi_grid: Tuple[int, int] = fekete_szego.ORACLE_GRID,
        phi_mu_step: float = 0.005,
        min_branch_hits: int = 50,
        wp_grid: Tuple[int, int, int] = (64, 128, 16),
        rep_order: int = concave_rep.REP_ORDER,
        rays: int = 200,
    ) -> None:
        self.log = get_logger("verify")
        self.samples = samples
        self.seed = seed
        self.quad_grid = quad_grid
        self.phi_grid = phi_grid
        self.phi_mu_step = phi_mu_step
        self.min_branch_hits = min_branch_hits
        self.wp_grid = wp_grid
        self.rep_order = rep_order
        self.rays = rays
        self._suites: Dict[VerifySuite, Callable[[], SuiteReport]] = {
            VerifySuite.quadmax: self.quadmax,
            VerifySuite.phi: self.phi,
            VerifySuite.rep: self.rep,
            VerifySuite.bodies: self.bodies,
            VerifySuite.regions: self.regions,
        }

    def run(self, suite: VerifySuite) -> List[SuiteReport]:
        suite = VerifySuite(suite)
        names = list(self._suites) if suite is VerifySuite.all else [suite]
        reports = []
        for name in names:
            report = self._suites[name]()
            self.log.info(
                "suite_finished",
                extra={"suite": report.name, "passed": report.passed, "max_deviation": report.max_deviation},
            )
            reports.append(report)
        return reports

    def _rng(self) -> np.random.Generator:
        # each suite restarts from the seed, so `all` repeats the single-suite numbers
        return make_rng(self.seed)

    def quadmax(self) -> SuiteReport:
        rng = self._rng()
        tol = 1e-4
        tol_cont = 1e-9
        worst = 0.0
        failures = 0
        branches: Counter = Counter()
        for a, b, c in rng.uniform(-5.0, 5.0, size=(self.samples, 3)):
            q = QuadCoeffs(float(a), float(b), float(c))
            closed, branch = quad_max.y_closed(q)
            branches[branch.value] += 1
            dev = abs(closed - quad_max.y_oracle(q, *self.quad_grid))
            worst = max(worst, dev)
            if dev > tol:
                failures += 1
                self.log.warning("quadmax_mismatch", extra={"a": q.a, "b": q.b, "c": q.c, "deviation": dev})

        # the uniform box rarely lands on MinusParabola
        for q in minus_parabola_triples(rng, max(10, self.samples // 10)):
            closed, branch = quad_max.y_closed(q)
            branches[branch.value] += 1
            dev = abs(closed - quad_max.y_oracle(q, *self.quad_grid))
            worst = max(worst, dev)
            if dev > tol:
                failures += 1
                self.log.warning("quadmax_mismatch", extra={"a": q.a, "b": q.b, "c": q.c, "deviation": dev})

        jump, switches = 0.0, 0
        for start, direction in zip(rng.uniform(-2.0, 2.0, size=(self.rays, 3)), rng.normal(size=(self.rays, 3))):
            gap, found = quad_max.ray_continuity_gap(QuadCoeffs(*map(float, start)), tuple(direction))
            jump = max(jump, gap)
            switches += found

        return SuiteReport(
            name="quadmax",
            samples=self.samples,
            max_deviation=worst,
            tolerance=tol,
            passed=failures == 0 and jump <= tol_cont,
            details={
                "failures": failures,
                "branches": dict(sorted(branches.items())),
                "boundary_jump": jump,
                "boundary_switches": switches,
            },
        )

    def phi(self) -> SuiteReport:
        rng = self._rng()
        tol_y, tol_oracle, tol_cont, tol_end = 1e-10, 1e-4, 1e-9, 1e-12
        mus = np.round(np.arange(PHI_MU_RANGE[0], PHI_MU_RANGE[1] + 0.5 * self.phi_mu_step, self.phi_mu_step), 12)
        coverage: Counter = Counter()
        dev_y = dev_oracle = 0.0
        unimodal = True
        for P in PHI_P_VALUES:
            pp = p_from_P(P)
            th = fekete_szego.thresholds(pp)
            section = []
            for mu in mus:
                mu = float(mu)
                value, branch = fekete_szego.phi_closed(pp, mu, th)
                coverage[branch.value] += 1
                dev_y = max(dev_y, abs(value - fekete_szego.phi_via_y(pp, mu)))
                dev_oracle = max(dev_oracle, abs(value - fekete_szego.phi_oracle(pp, mu, *self.phi_grid)))
                section.append(value)
            if not is_unimodal(section):
                unimodal = False
                self.log.warning("phi_not_unimodal", extra={"P": P})

        dev_end = 0.0
        for P in rng.uniform(2.0, 20.0, size=min(self.samples, 50)):
            pp = p_from_P(float(P) + 1e-9)
            dev_end = max(
                dev_end,
                abs(fekete_szego.phi_closed(pp, 0.0)[0] - (pp.P * pp.P - 1.0)),
                abs(fekete_szego.phi_closed(pp, 1.0)[0] - 1.0),
            )

        dev_cont = max(
            (continuity_gap(float(P)) for P in rng.uniform(2.01, 20.0, size=min(self.samples, 50))),
            default=0.0,
        )
        ordering_ok, mu4_range = self._threshold_ordering(rng)

        branches_ok = all(coverage[b.value] >= self.min_branch_hits for b in PhiBranch)
        passed = (
            dev_y <= tol_y
            and dev_oracle <= tol_oracle
            and dev_cont <= tol_cont
            and dev_end <= tol_end
            and branches_ok
            and ordering_ok
            and unimodal
        )
        return SuiteReport(
            name="phi",
            samples=len(PHI_P_VALUES) * len(mus),
            max_deviation=max(dev_y, dev_oracle, dev_cont, dev_end),
            tolerance=tol_oracle,
            passed=passed,
            details={
                "via_y": dev_y,
                "oracle": dev_oracle,
                "continuity": dev_cont,
                "endpoints": dev_end,
                "branch_coverage": {b.value: coverage[b.value] for b in PhiBranch},
                "ordering": ordering_ok,
                "unimodal": unimodal,
                "mu4_observed": list(mu4_range),
            },
        )

    def _threshold_ordering(self, rng: np.random.Generator) -> Tuple[bool, Tuple[float, float]]:
        named = constants()
        ok = True
        lo, hi = float("inf"), float("-inf")
        for P in rng.uniform(2.0, 20.0, size=min(self.samples, 200)):
            P = float(P) + 1e-6
            th = fekete_szego.thresholds(p_from_P(P))
            lo, hi = min(lo, th.mu4), max(hi, th.mu4)
            chain = 1.0 / 3.0 < th.mu1 < 0.5 < th.mu2 < th.mu4 < th.muA < 1.0 and 8.0 / 9.0 < th.muA
            if named.P_2 + 1e-6 < P < named.P_star - 1e-6:
                chain = chain and th.mu2 < th.mu3minus < th.mu3plus < th.mu4
            elif P > named.P_star + 1e-6:
                chain = chain and th.mu3minus < th.mu2 < th.mu3plus < th.mu4
            if not chain:
                ok = False
                self.log.warning("threshold_order_broken", extra={"P": P})
        return ok, (lo, hi)

    def rep(self) -> SuiteReport:
        rng = self._rng()
        tol = 1e-8
        n = min(self.samples, 100)
        worst = 0.0
        for k in range(n):
            pp = pole_from_p(float(rng.uniform(0.2, 0.8)))
            if k % 2 == 0:
                s = SchurPair(sigma0=complex(random_circle_points(rng, 1)[0]), sigma1=0.0j)
            else:
                s = SchurPair(
                    sigma0=complex(random_disk_points(rng, 1, 0.9)[0]),
                    sigma1=complex(random_circle_points(rng, 1)[0]),
                )
            phi = coeff_bodies.realize_boundary(pp, s, self.rep_order)
            fp = concave_rep.fprime_series(pp, phi)
            series_coeffs = concave_rep.coefficients_from_fprime(fp)
            closed = concave_rep.a23_from_c(pp, coeff_bodies.c_from_sigma(pp, s))
            lam1 = concave_rep.lambda_mu(series_coeffs, 1.0)
            worst = max(
                worst,
                abs(series_coeffs.a2 - closed.a2),
                abs(series_coeffs.a3 - closed.a3),
                abs(lam1 - concave_rep.schwarzian_at_zero(fp) / 6.0),
            )
        return SuiteReport(name="rep", samples=n, max_deviation=worst, tolerance=tol, passed=worst <= tol)

    def bodies(self) -> SuiteReport:
        rng = self._rng()
        tol_round, tol_a3 = 1e-10, 1e-9
        worst = 0.0
        outside = 0
        for _ in range(self.samples):
            pp = pole_from_p(float(rng.uniform(0.05, 0.95)))
            s = SchurPair(
                sigma0=complex(random_disk_points(rng, 1, 0.95)[0]),
                sigma1=complex(random_disk_points(rng, 1)[0]),
            )
            c = coeff_bodies.c_from_sigma(pp, s)
            if not coeff_bodies.x1_contains(pp, c):
                outside += 1
                continue
            back = coeff_bodies.c_from_sigma(pp, coeff_bodies.sigma_from_c(pp, c))
            worst = max(worst, abs(back.c0 - c.c0), abs(back.c1 - c.c1))

        misclassified = 0
        for k in range(min(self.samples, 200)):
            pp = pole_from_p(float(rng.uniform(0.05, 0.95)))
            if k % 2 == 0:
                s = SchurPair(sigma0=complex(random_circle_points(rng, 1)[0]), sigma1=complex(random_disk_points(rng, 1)[0]))
                expected = BoundaryClass.automorphism
            else:
                s = SchurPair(
                    sigma0=complex(random_disk_points(rng, 1, 0.9)[0]),
                    sigma1=complex(random_circle_points(rng, 1)[0]),
                )
                expected = BoundaryClass.blaschke2
            if coeff_bodies.classify_boundary(pp, coeff_bodies.c_from_sigma(pp, s)) is not expected:
                misclassified += 1

        a3_max = a3_disk_scan(rng, 2 * self.samples)
        passed = (
            worst <= tol_round
            and outside == 0
            and misclassified == 0
            and a3_max <= 1.0 + tol_a3
            and a3_max > 1.0 - 1e-3
        )
        return SuiteReport(
            name="bodies",
            samples=self.samples,
            max_deviation=worst,
            tolerance=tol_round,
            passed=passed,
            details={"outside_x1": outside, "misclassified": misclassified, "a3_max_distance": a3_max},
        )

    def regions(self) -> SuiteReport:
        rng = self._rng()
        tol_id = 1e-12
        worst = 0.0
        ps = rng.uniform(0.3, 0.95, self.samples)
        zetas = random_disk_points(rng, self.samples)
        for p, zeta in zip(ps, zetas):
            pp = pole_from_p(float(p))
            zeta = complex(zeta)
            coeff_form = regions.a_n_extremal(pp, zeta, 3) - regions.a_n_extremal(pp, zeta, 2) ** 2
            koebe_form = regions.lambda1_extremal(pp, zeta)
            worst = max(
                worst,
                abs(coeff_form - koebe_form),
                abs(coeff_form - regions.lambda1_h_form(pp, zeta)),
                abs(regions.hankel_extremal(pp, zeta) - coeff_form),
            )

        witness_ok = True
        for p in WITNESS_P_PRESENT:
            pp = pole_from_p(p)
            witness = regions.wp_witness(pp)
            witness_ok = witness_ok and witness is not None and not regions.omega_contains(pp, witness[1])
        for p in WITNESS_P_ABSENT:
            witness_ok = witness_ok and regions.wp_witness(pole_from_p(p)) is None

        cloud_ok = True
        cloud_points = 0
        for p in (0.4, 0.5):
            pp = pole_from_p(p)
            cloud = regions.wp_sample(pp, *self.wp_grid)
            cloud_points += len(cloud)
            cloud_ok = cloud_ok and bool(np.all(regions.omega_contains(pp, cloud.points)))

        figure_ok = True
        cardioid = regions.cardioid_boundary(512).points
        for p in NESTING_P:
            pp = pole_from_p(p)
            boundary = regions.omega_boundary(pp, 512).points
            figure_ok = figure_ok and bool(np.all(regions.omega_contains(pp, cardioid)))
            figure_ok = figure_ok and bool(np.all(np.abs(boundary) <= 1.0 + 1e-9))
            for q in (p - 0.1, p - 0.2):
                if q > 0.0:
                    figure_ok = figure_ok and bool(np.all(regions.omega_contains(pole_from_p(q), boundary)))

        passed = worst <= tol_id and witness_ok and cloud_ok and figure_ok
        return SuiteReport(
            name="regions",
            samples=self.samples,
            max_deviation=worst,
            tolerance=tol_id,
            passed=passed,
            details={"witness": witness_ok, "wp_points": cloud_points, "wp_in_omega": cloud_ok, "figure": figure_ok},
        )


def continuity_gap(P: float) -> float:
    """Largest jump between adjacent closed-form branches at the thresholds of P."""
    pp = p_from_P(P)
    th = fekete_szego.thresholds(pp)
    branch_value = fekete_szego.branch_value
    psi_at_mu2 = fekete_szego.psi_branch(P, th.mu2, th)
    gaps = [
        abs(branch_value(PhiBranch.linear_low, P, th.mu1) - branch_value(PhiBranch.rational_mid, P, th.mu1)),
        abs(branch_value(PhiBranch.rational_mid, P, th.mu2) - branch_value(psi_at_mu2, P, th.mu2)),
        abs(branch_value(PhiBranch.psi_sqrt, P, th.mu4) - branch_value(PhiBranch.linear_high, P, th.mu4)),
    ]
    if th.has_mu3:
        gaps.append(abs(branch_value(PhiBranch.psi_linear, P, th.mu3plus) - branch_value(PhiBranch.psi_sqrt, P, th.mu3plus)))
        if th.mu3minus > th.mu2:
            gaps.append(
                abs(branch_value(PhiBranch.psi_linear, P, th.mu3minus) - branch_value(PhiBranch.psi_sqrt, P, th.mu3minus))
            )
    return max(gaps)


def minus_parabola_triples(rng: np.random.Generator, n: int) -> List[QuadCoeffs]:
    """Triples with ac < 0, -4ac(c^-2 - 1) <= b^2 and |b| < 2(1 - |c|)."""
    out = []
    for _ in range(n):
        C = float(rng.uniform(0.05, 0.9))
        sign = 1.0 if rng.uniform() < 0.5 else -1.0
        # keeps k below (2(1 - C))^2 so the b window is non-empty
        A = float(rng.uniform(0.05, 0.95)) * C * (1.0 - C) / (1.0 + C)
        k = 4.0 * A * (1.0 - C * C) / C
        b = math.sqrt(float(rng.uniform(k, 4.0 * (1.0 - C) ** 2)))
        if rng.uniform() < 0.5:
            b = -b
        out.append(QuadCoeffs(sign * A, b, -sign * C))
    return out


def a3_disk_scan(rng: np.random.Generator, n: int) -> float:
    """max |a3 - P^2 + 2| over n samples; every other sigma0 is on the unit circle."""
    worst = 0.0
    for k in range(n):
        pp = pole_from_p(float(rng.uniform(0.05, 0.95)))
        if k % 2 == 0:
            s0 = complex(random_circle_points(rng, 1)[0])
        else:
            s0 = complex(random_disk_points(rng, 1)[0])
        s = SchurPair(sigma0=s0, sigma1=complex(random_disk_points(rng, 1)[0]))
        a3 = concave_rep.a23_from_c(pp, coeff_bodies.c_from_sigma(pp, s)).a3
        worst = max(worst, abs(a3 - pp.P * pp.P + 2.0))
    return worst


def is_unimodal(values) -> bool:
    """Strictly decreasing up to the smallest value, strictly increasing after it."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return True
    k = int(np.argmin(values))
    steps = np.diff(values)
    return bool(np.all(steps[:k] < 0.0) and np.all(steps[k:] > 0.0))
