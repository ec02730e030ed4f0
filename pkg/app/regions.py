"""Value regions of a3 - a2^2 over concave functions with a pole at p.

Omega_p is the set swept by the one-parameter family f_zeta; W_p is the full
variability region, sampled through the Schur parameters.
"""
from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from .concave_rep import lambda_mu_from_sigma
from .disk_maps import t_a
from .errors import DomainError, PoleError
from .models import HQuad, PoleParam, RegionSample, RegionSet, RegionTag, SchurPair
from .numeric_core import TAU_DISK
from .series import PowerSeries
from .utils import get_logger

OMEGA_TOL = 1e-9
OMEGA_W_TOL = 1e-8
MIN_TRACE_POINTS = 16
WP_MIN_GRID = (32, 64, 16)

log = get_logger("regions")


def _check_zeta(zeta: complex) -> complex:
    zeta = complex(zeta)
    if abs(zeta) > 1.0 + TAU_DISK:
        raise DomainError(f"zeta must lie in the closed unit disk, got |zeta|={abs(zeta)!r}")
    return zeta


def a_n_extremal(pp: PoleParam, zeta: complex, n: int) -> complex:
    """n-th coefficient of f_zeta: (1 - p^(2n) zeta) / (p^(n-1) (1 - p^2 zeta))."""
    zeta = _check_zeta(zeta)
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    p = pp.p
    den = 1.0 - p * p * zeta
    if abs(den) < 1e-15:
        raise PoleError(f"1 - p^2 zeta vanishes for p={p!r}, zeta={zeta!r}")
    return (1.0 - p ** (2 * n) * zeta) / (p ** (n - 1) * den)


def f_zeta_series(pp: PoleParam, zeta: complex, order: int) -> PowerSeries:
    """f_zeta(z) = (z - T_p(p zeta) z^2) / ((1 - z/p)(1 - p z)) as a truncated series."""
    zeta = _check_zeta(zeta)
    z = PowerSeries.variable(order)
    tail = t_a(pp.p, pp.p * zeta)
    den = 1.0 - pp.P * z + z * z
    return (z - tail * z * z) / den


def koebe(z: complex) -> complex:
    return z / (1.0 - z) ** 2


def lambda1_extremal(pp: PoleParam, zeta: complex) -> complex:
    zeta = _check_zeta(zeta)
    return -(pp.P * pp.P - 4.0) * koebe(pp.p * pp.p * zeta)


def hankel_extremal(pp: PoleParam, zeta: complex) -> complex:
    """Second Hankel determinant a2 a4 - a3^2 of f_zeta."""
    a2, a3, a4 = (a_n_extremal(pp, zeta, n) for n in (2, 3, 4))
    return a2 * a4 - a3 * a3


def h_quad(pp: PoleParam) -> HQuad:
    return HQuad(t=pp.P * pp.P - 2.0)


def lambda1_h_form(pp: PoleParam, zeta: complex) -> complex:
    """-P^-2 h(T_{p^2}(zeta))."""
    zeta = _check_zeta(zeta)
    sigma = t_a(pp.p * pp.p, zeta)
    return -h_quad(pp)(sigma) / (pp.P * pp.P)


def omega_preimage(pp: PoleParam, w):
    """The root sigma of -P^-2 h(sigma) = w with the smaller modulus.

    The two roots multiply to 1 - v and sum to t > 2, so at most one of them
    lies in the closed disk.
    """
    t = pp.P * pp.P - 2.0
    v = -pp.P * pp.P * np.asarray(w, dtype=complex)
    root = np.sqrt(t * t - 4.0 * (1.0 - v))
    big = 0.5 * (t + root)
    small = (1.0 - v) / big
    return complex(small) if small.ndim == 0 else small


def omega_contains(pp: PoleParam, w, tol: float = OMEGA_TOL, w_tol: float = OMEGA_W_TOL):
    """Membership in Omega_p; scalar in, bool out, array in, bool array out.

    A point whose preimage falls just outside the disk still counts when it lies
    within w_tol of the boundary image of the radially projected preimage.
    """
    w = np.asarray(w, dtype=complex)
    sigma = np.asarray(omega_preimage(pp, w))
    radius = np.abs(sigma)
    rim = -h_quad(pp)(sigma / np.maximum(radius, 1.0)) / (pp.P * pp.P)
    inside = (radius <= 1.0 + tol) | (np.abs(w - rim) <= w_tol)
    return bool(inside) if inside.ndim == 0 else inside


def _trace_angles(m: int) -> np.ndarray:
    if m < MIN_TRACE_POINTS:
        raise DomainError(f"need at least {MIN_TRACE_POINTS} boundary points, got {m}")
    return 2.0 * np.pi * np.arange(m) / m


def omega_boundary(pp: PoleParam, m: int) -> RegionSample:
    sigma = np.exp(1j * _trace_angles(m))
    points = -h_quad(pp)(sigma) / (pp.P * pp.P)
    return RegionSample(points=points, tag=RegionTag.omega_boundary)


def delta_r(pp: PoleParam, r: float) -> float:
    """Lower bound (1 - r)(P^2 - 3 - r) for |h(e^(i theta)) - h(r e^(i psi))|, attained at theta = psi = 0."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r!r}")
    return (1.0 - r) * (pp.P * pp.P - 3.0 - r)


def feasible_r_interval(pp: PoleParam) -> Optional[Tuple[float, float]]:
    """Open interval of r where the witness leaves Omega_p; None once P >= P0."""
    P = pp.P
    lo = (3.0 * P * P - P - 9.0) / (P + 3.0)
    if not lo < 1.0:
        return None
    return max(lo, 0.0), 1.0


def witness_value(pp: PoleParam, r: float) -> float:
    """a3 - a2^2 at sigma0 = -r, sigma1 = -1: -P^-2 [h(r) - (1 - r^2) P / 3]."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r!r}")
    P = pp.P
    return -(h_quad(pp)(r) - (1.0 - r * r) * P / 3.0) / (P * P)


def wp_witness(pp: PoleParam) -> Optional[Tuple[float, float]]:
    interval = feasible_r_interval(pp)
    if interval is None:
        return None
    r = 0.5 * (interval[0] + interval[1])
    value = witness_value(pp, r)
    log.debug("witness_found", extra={"p": pp.p, "r": r, "value": value, "endpoint": 1.0 - 4.0 / (pp.P * pp.P)})
    return r, value


def wp_sample(
    pp: PoleParam,
    n_r: int = WP_MIN_GRID[0],
    n_theta_0: int = WP_MIN_GRID[1],
    n_theta_1: int = WP_MIN_GRID[2],
) -> RegionSample:
    """Cloud of a3 - a2^2 over a sigma0 polar grid times sigma1 on the unit circle."""
    if n_r < WP_MIN_GRID[0] or n_theta_0 < WP_MIN_GRID[1] or n_theta_1 < WP_MIN_GRID[2]:
        raise DomainError(f"grid {n_r}x{n_theta_0}x{n_theta_1} is below the minimum {WP_MIN_GRID}")
    radii = np.linspace(0.0, 1.0, n_r)
    theta0 = 2.0 * np.pi * np.arange(n_theta_0) / n_theta_0
    sigma0 = (radii[:, None] * np.exp(1j * theta0[None, :])).ravel()
    sigma1 = np.exp(2j * np.pi * np.arange(n_theta_1) / n_theta_1)
    cloud = lambda_mu_from_sigma(pp, SchurPair(sigma0=sigma0[:, None], sigma1=sigma1[None, :]), 1.0).ravel()
    witness = wp_witness(pp)
    if witness is not None:
        extra = lambda_mu_from_sigma(pp, SchurPair(sigma0=-witness[0], sigma1=-1.0), 1.0)
        cloud = np.append(cloud, extra)
    log.info("wp_sampled", extra={"p": pp.p, "points": int(cloud.size), "witness": witness is not None})
    return RegionSample(points=cloud, tag=RegionTag.wp_cloud)


def cardioid_boundary(m: int) -> RegionSample:
    """-(1 + e^(i theta))^2 / 4, the boundary of the intersection of all Omega_p."""
    points = -((1.0 + np.exp(1j * _trace_angles(m))) ** 2) / 4.0
    return RegionSample(points=points, tag=RegionTag.cardioid)


def unit_circle(m: int) -> RegionSample:
    return RegionSample(points=np.exp(1j * _trace_angles(m)), tag=RegionTag.unit_circle)


def P0_constant() -> float:
    """Larger root of 3P^2 - 2P - 12."""
    return (1.0 + math.sqrt(37.0)) / 3.0


def p0_constant() -> float:
    s = 1.0 + math.sqrt(37.0)
    return (s - math.sqrt(2.0 * s)) / 6.0


def sample_set(kind: RegionSet, pp: Optional[PoleParam], m: int) -> RegionSample:
    """One named set; omega and wp need the pole, wp scales its grid with m."""
    kind = RegionSet(kind)
    if kind in (RegionSet.omega, RegionSet.wp) and pp is None:
        raise DomainError(f"the {kind.value} set needs a pole p")
    if kind is RegionSet.omega:
        return omega_boundary(pp, m)
    if kind is RegionSet.wp:
        n_r, n_t0, n_t1 = WP_MIN_GRID
        return wp_sample(pp, max(n_r, m // 16), max(n_t0, m // 8), n_t1)
    if kind is RegionSet.cardioid:
        return cardioid_boundary(m)
    return unit_circle(m)
