"""Concave functions with a pole at p built from self-maps fixing p.

f'(z) = (1 - P z + z^2)^-2 exp( int_0^z -2 phi / (1 - zeta phi) dzeta )
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from .coeff_bodies import c_from_sigma, x1_contains
from .errors import DomainError, MembershipError
from .models import CoeffPair, ConcaveCoeffs, PoleParam, SchurPair
from .series import PowerSeries
from .utils import get_logger

REP_ORDER = 96

log = get_logger("concave_rep")


def fprime_series(
    pp: PoleParam,
    phi: PowerSeries,
    order: Optional[int] = None,
    check_fixed_point: bool = True,
) -> PowerSeries:
    order = phi.order if order is None else order
    if order > phi.order:
        raise DomainError(f"phi is only known to order {phi.order}, asked for {order}")
    phi = phi.truncate(order)
    if check_fixed_point:
        gap = abs(phi(pp.p) - pp.p)
        allowed = phi.tail_bound(pp.p) + 1e-9
        if gap > allowed:
            raise DomainError(f"phi(p) differs from p by {gap!r} (allowed {allowed!r}); phi is not in B_p")
    denom = 1.0 - phi.shift(1)
    if denom.coeffs[0] == 0:
        raise ZeroDivisionError("1 - z phi has a vanishing constant term")
    u = (-2.0 * phi) / denom
    growth = u.integrate().exp()
    z = PowerSeries.variable(order)
    q = 1.0 - pp.P * z + z * z
    fp = growth / (q * q)
    log.debug("fprime_built", extra={"P": pp.P, "order": order})
    return fp


def coefficients_from_fprime(fp: PowerSeries) -> ConcaveCoeffs:
    """a_n = (coefficient n-1 of f') / n."""
    if fp.order < 3:
        raise DomainError("need f' to order 3 to read a2 and a3")
    a = [fp[n - 1] / n for n in range(1, fp.order + 1)]
    return ConcaveCoeffs(a2=a[1], a3=a[2], higher=tuple(a[3:]))


def concave_coeffs_from_phi(pp: PoleParam, phi: PowerSeries, order: int = REP_ORDER) -> ConcaveCoeffs:
    return coefficients_from_fprime(fprime_series(pp, phi, min(order, phi.order)))


def schwarzian_at_zero(fp: PowerSeries) -> complex:
    """S_f(0) = f'''/f' - (3/2)(f''/f')^2 at 0, read off the series of f'."""
    d1, d2, d3 = fp[0], fp[1], 2.0 * fp[2]
    return d3 / d1 - 1.5 * (d2 / d1) ** 2


def a23_from_c(pp: PoleParam, c: CoeffPair) -> ConcaveCoeffs:
    if not x1_contains(pp, c):
        raise MembershipError(f"({c.c0!r}, {c.c1!r}) is not in X1 for P={pp.P!r}")
    P = pp.P
    c0, c1 = complex(c.c0), complex(c.c1)
    a2 = P - c0
    a3 = P * P - (c1 - c0 * c0 + 4.0 * P * c0 + 2.0) / 3.0
    return ConcaveCoeffs(a2=a2, a3=a3)


def lambda_mu(a: ConcaveCoeffs, mu: float) -> complex:
    return a.a3 - mu * a.a2 ** 2


def lambda_mu_from_c(pp: PoleParam, c: CoeffPair, mu: float) -> complex:
    P = pp.P
    c0, c1 = complex(c.c0), complex(c.c1)
    return ((1.0 - 3.0 * mu) * c0 * c0 + 2.0 * (3.0 * mu - 2.0) * P * c0 - c1 + 3.0 * (1.0 - mu) * P * P - 2.0) / 3.0


def lambda_mu_from_sigma(pp: PoleParam, s: SchurPair, mu: float):
    """a3 - mu a2^2 in the Schur parameters; sigma0 and sigma1 may be broadcastable arrays."""
    P = pp.P
    s0 = np.asarray(s.sigma0, dtype=complex)
    s1 = np.asarray(s.sigma1, dtype=complex)
    out = (
        P * P
        - 2.0
        - mu * (P - 1.0 / P) ** 2
        + (1.0 - 2.0 * mu * (1.0 - 1.0 / (P * P))) * s0
        - mu * s0 * s0 / (P * P)
        - (1.0 - np.abs(s0) ** 2) * s1 / (3.0 * P)
    )
    return complex(out) if out.ndim == 0 else out


def lambda_mu_two_paths(pp: PoleParam, s: SchurPair, mu: float) -> tuple:
    """(sigma form, coefficient form) of the functional for one Schur pair."""
    via_c = lambda_mu(a23_from_c(pp, c_from_sigma(pp, s)), mu)
    return lambda_mu_from_sigma(pp, s, mu), via_c
