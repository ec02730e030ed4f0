from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .errors import DomainError, PoleError, UnsupportedCompositionError
from .models import DiskAutomorphism
from .numeric_core import TAU_DISK
from .series import DEFAULT_ORDER, PowerSeries
from .utils import get_logger

log = get_logger("disk_maps")

_POLE_EPS = 1e-15


def _check_swap_point(a: complex) -> None:
    if not abs(a) < 1.0 - TAU_DISK:
        raise DomainError(f"|a| must be < 1, got |a|={abs(a)!r}")


def t_a(a: complex, z):
    """T_a(z) = (a - z) / (1 - conj(a) z); accepts scalars or arrays."""
    _check_swap_point(a)
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) > 1.0 + TAU_DISK):
        raise DomainError("T_a is evaluated on the closed unit disk only")
    den = 1.0 - np.conj(a) * z_arr
    if np.any(np.abs(den) < _POLE_EPS):
        raise PoleError(f"1 - conj(a) z vanishes for a={a!r}")
    out = (a - z_arr) / den
    if out.ndim == 0:
        return complex(out)
    return out


def t_a_derivative(a: complex, z: complex) -> complex:
    _check_swap_point(a)
    den = 1.0 - a.conjugate() * z
    if abs(den) < _POLE_EPS:
        raise PoleError(f"1 - conj(a) z vanishes for a={a!r}")
    return (abs(a) ** 2 - 1.0) / den ** 2


def automorphism_series(auto: DiskAutomorphism, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Taylor series of z -> T_a(rotation z) about 0."""
    a = complex(auto.a)
    _check_swap_point(a)
    if order < 1:
        raise DomainError(f"order must be at least 1, got {order}")
    coeffs = np.zeros(order, dtype=complex)
    coeffs[0] = a
    if order > 1:
        n = np.arange(order - 1)
        coeffs[1:] = (abs(a) ** 2 - 1.0) * np.conj(a) ** n * complex(auto.rotation) ** (n + 1)
    return PowerSeries(coeffs, mobius=auto)


def t_a_series(a: complex, order: int = DEFAULT_ORDER) -> PowerSeries:
    return automorphism_series(DiskAutomorphism(a=complex(a)), order)


def compose_series(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """Truncated series of outer(inner(z)).

    A non-zero inner constant term is only supported when ``outer`` expands a
    disk automorphism; that case is re-expanded as a Möbius map of the inner
    series by series division.
    """
    if outer.order != inner.order:
        raise DomainError(f"orders differ: {outer.order} vs {inner.order}")
    if inner.coeffs[0] == 0:
        return outer.compose(inner)
    if outer.mobius is None:
        raise UnsupportedCompositionError(
            "outer series has no closed-form re-expansion at a non-zero inner constant"
        )
    a = complex(outer.mobius.a)
    w = complex(outer.mobius.rotation) * inner
    den = 1.0 - a.conjugate() * w
    if abs(den.coeffs[0]) < _POLE_EPS:
        raise PoleError("composition hits the pole of the outer automorphism")
    return (a - w) / den


def identity_series(order: int = DEFAULT_ORDER) -> PowerSeries:
    return PowerSeries.variable(order)


@dataclass(frozen=True)
class Blaschke2:
    """g(z) = z T_omega(zeta T_z0(z)) with omega = w0 / z0.

    The degree-2 Blaschke product attaining equality in Dieudonné's lemma.
    """

    z0: complex
    w0: complex
    zeta: complex

    @property
    def omega(self) -> complex:
        return self.w0 / self.z0

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = z * t_a(self.omega, self.zeta * t_a(self.z0, z))
        return complex(out) if np.ndim(out) == 0 else out

    def derivative(self, z: complex) -> complex:
        u = self.zeta * t_a(self.z0, z)
        return t_a(self.omega, u) + z * t_a_derivative(self.omega, u) * self.zeta * t_a_derivative(self.z0, z)

    def series(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        inner = self.zeta * t_a_series(self.z0, order)
        return compose_series(t_a_series(self.omega, order), inner).shift(1)

    def compose_after(self, s: PowerSeries) -> PowerSeries:
        """Series of g(s(z)) for an arbitrary inner series s with |s(0)| < 1."""
        u = self.zeta * compose_series(t_a_series(self.z0, s.order), s)
        return s * compose_series(t_a_series(self.omega, s.order), u)


def blaschke2_dieudonne(
    z0: complex, w0: complex, zeta: complex, order: int = DEFAULT_ORDER
) -> Tuple[PowerSeries, Blaschke2]:
    z0, w0, zeta = complex(z0), complex(w0), complex(zeta)
    if not 0.0 < abs(z0) < 1.0:
        raise DomainError(f"need 0 < |z0| < 1, got |z0|={abs(z0)!r}")
    if not abs(w0) < abs(z0):
        raise DomainError(f"need |w0| < |z0|, got |w0|={abs(w0)!r}, |z0|={abs(z0)!r}")
    if abs(abs(zeta) - 1.0) > TAU_DISK:
        raise DomainError(f"zeta must lie on the unit circle, got |zeta|={abs(zeta)!r}")
    g = Blaschke2(z0=z0, w0=w0, zeta=zeta)
    return g.series(order), g


def blaschke2_through(z0: complex, w0: complex, w: complex) -> Blaschke2:
    """The Blaschke product with g(z0) = w0 and g'(z0) = w for w on the Dieudonné circle."""
    z0, w0, w = complex(z0), complex(w0), complex(w)
    omega = w0 / z0
    zeta = (w - omega) * (abs(z0) ** 2 - 1.0) / (z0 * (abs(omega) ** 2 - 1.0))
    # project rounding noise back onto the circle
    zeta = zeta / abs(zeta)
    return Blaschke2(z0=z0, w0=w0, zeta=zeta)


def dieudonne_disk(z0: complex, w0: complex) -> Tuple[complex, float]:
    """Value region of g'(z0) over self-maps with g(0) = 0, g(z0) = w0: (center, radius)."""
    z0, w0 = complex(z0), complex(w0)
    if z0 == 0:
        raise DomainError("z0 must be non-zero")
    if not abs(z0) < 1.0:
        raise DomainError(f"need |z0| < 1, got {abs(z0)!r}")
    if abs(w0) > abs(z0):
        raise DomainError(f"need |w0| <= |z0|, got |w0|={abs(w0)!r}")
    r0 = abs(z0)
    radius = max(r0 * r0 - abs(w0) ** 2, 0.0) / (r0 * (1.0 - r0 * r0))
    return w0 / z0, radius


def conjugate_by_tp(p: float, psi_after: Callable[[PowerSeries], PowerSeries], order: int = DEFAULT_ORDER) -> PowerSeries:
    """Series of phi = T_p o psi o T_p, given psi applied to the series of T_p.

    phi fixes p whenever psi fixes 0.
    """
    tp = t_a_series(p, order)
    phi = compose_series(tp, psi_after(tp))
    log.debug("phi_built", extra={"p": p, "order": order, "c0": [phi[0].real, phi[0].imag]})
    return phi


def rotation_phi(p: float, zeta: complex, order: int = DEFAULT_ORDER) -> PowerSeries:
    """phi(z) = T_p(zeta T_p(z)), the automorphisms of the disk fixing p."""
    return conjugate_by_tp(p, lambda s: complex(zeta) * s, order)


def blaschke_phi(p: float, g: Blaschke2, order: int = DEFAULT_ORDER) -> PowerSeries:
    return conjugate_by_tp(p, g.compose_after, order)
