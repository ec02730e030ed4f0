"""Coefficient bodies X0 and X1 of the self-maps of the disk fixing p."""
from __future__ import annotations

from typing import Tuple

from .disk_maps import blaschke2_through, blaschke_phi, rotation_phi, t_a
from .errors import DegenerateError, DomainError, MembershipError
from .models import BoundaryClass, CoeffPair, PoleParam, SchurPair
from .numeric_core import TAU_DISK
from .series import PowerSeries
from .utils import get_logger

BOUNDARY_TOL = 1e-9
SIGMA1_DEGENERATE = 1e-9

log = get_logger("coeff_bodies")


def x0_disk(pp: PoleParam) -> Tuple[float, float]:
    return 1.0 / pp.P, 1.0 / pp.P


def x0_contains(pp: PoleParam, c0: complex, tol: float = BOUNDARY_TOL) -> bool:
    center, radius = x0_disk(pp)
    return abs(c0 - center) <= radius + tol


def x1_center(pp: PoleParam, c0: complex) -> complex:
    return 1.0 - pp.P * c0 + c0 * c0


def x1_radius(pp: PoleParam, c0: complex) -> float:
    """Radius of the c1-disk over a fixed c0; negative outside X0."""
    P = pp.P
    return P * (1.0 / (P * P) - abs(c0 - 1.0 / P) ** 2)


def x1_residual(pp: PoleParam, c: CoeffPair) -> float:
    """radius - |c1 - center|: >= 0 inside X1, = 0 on its boundary."""
    return x1_radius(pp, c.c0) - abs(c.c1 - x1_center(pp, c.c0))


def x1_contains(pp: PoleParam, c: CoeffPair, tol: float = BOUNDARY_TOL) -> bool:
    if x1_radius(pp, c.c0) < -tol:
        return False
    return x1_residual(pp, c) >= -tol


def c_from_sigma(pp: PoleParam, s: SchurPair) -> CoeffPair:
    s0, s1 = complex(s.sigma0), complex(s.sigma1)
    if abs(s0) > 1.0 + TAU_DISK or abs(s1) > 1.0 + TAU_DISK:
        raise DomainError(f"Schur pair outside the closed bidisk: |s0|={abs(s0)!r}, |s1|={abs(s1)!r}")
    P = pp.P
    c0 = (1.0 - s0) / P
    c1 = (1.0 + (P * P - 2.0) * s0 + s0 * s0) / (P * P) + (1.0 - abs(s0) ** 2) * s1 / P
    return CoeffPair(c0=c0, c1=c1)


def sigma_from_c(pp: PoleParam, c: CoeffPair) -> SchurPair:
    if not x1_contains(pp, c):
        raise MembershipError(f"({c.c0!r}, {c.c1!r}) is not in X1 for P={pp.P!r}")
    P = pp.P
    s0 = 1.0 - P * complex(c.c0)
    if abs(s0) >= 1.0 - SIGMA1_DEGENERATE:
        raise DegenerateError(f"|sigma0|={abs(s0)!r}: sigma1 is undetermined on the boundary of X0")
    center = (1.0 + (P * P - 2.0) * s0 + s0 * s0) / (P * P)
    s1 = P * (complex(c.c1) - center) / (1.0 - abs(s0) ** 2)
    return SchurPair(sigma0=s0, sigma1=s1)


def classify_boundary(pp: PoleParam, c: CoeffPair, tol: float = BOUNDARY_TOL) -> BoundaryClass:
    if not x1_contains(pp, c, tol):
        raise MembershipError(f"({c.c0!r}, {c.c1!r}) is not in X1 for P={pp.P!r}")
    center, radius = x0_disk(pp)
    if abs(abs(c.c0 - center) - radius) <= tol:
        return BoundaryClass.automorphism
    if abs(x1_residual(pp, c)) <= tol:
        return BoundaryClass.blaschke2
    return BoundaryClass.interior


def realize_boundary(pp: PoleParam, s: SchurPair, order: int = 8) -> PowerSeries:
    """Series of an extremal phi with the coefficient pair c_from_sigma(s).

    Builds phi = T_p o psi o T_p where psi is the rotation z -> zeta z when
    |sigma0| = 1, and otherwise the Blaschke product of Dieudonné's equality
    case at z0 = p (which needs |sigma1| = 1).
    """
    c = c_from_sigma(pp, s)
    p = pp.p
    w0 = t_a(p, c.c0)
    if abs(abs(s.sigma0) - 1.0) <= BOUNDARY_TOL:
        zeta = w0 / p
        return rotation_phi(p, zeta / abs(zeta), order)
    if abs(abs(s.sigma1) - 1.0) > BOUNDARY_TOL:
        raise DomainError("an interior pair is not realised by a rotation or a degree-2 Blaschke product")
    # psi'(p) = c1 / (1 - p c0)^2
    w = c.c1 / (1.0 - p * c.c0) ** 2
    g = blaschke2_through(p, w0, w)
    return blaschke_phi(p, g, order)


def pc_identity(pp: PoleParam, c0: complex) -> Tuple[float, float]:
    """Both sides of |1 - p c0|^2 - |1 - c0/p|^2 = ((1 - p^4)/p^2) [(p/(1+p^2))^2 - |c0 - p/(1+p^2)|^2]."""
    p = pp.p
    lhs = abs(1.0 - p * c0) ** 2 - abs(1.0 - c0 / p) ** 2
    q = p / (1.0 + p * p)
    rhs = (1.0 - p ** 4) / (p * p) * (q * q - abs(c0 - q) ** 2)
    return lhs, rhs
