from __future__ import annotations

import math
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import BracketError, DomainError
from .models import NamedConstants, PoleParam
from .utils import get_logger

# |z| <= 1 + TAU_DISK counts as inside the closed unit disk
TAU_DISK = 1e-12
BISECT_WIDTH = 1e-13
BISECT_MAX_ITER = 200

log = get_logger("numeric_core")


def pole_from_p(p: float) -> PoleParam:
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    return PoleParam(p=p, P=p + 1.0 / p)


def p_from_P(P: float) -> PoleParam:
    if not P > 2.0:
        raise DomainError(f"P must exceed 2, got {P!r}")
    # 2 / (P + sqrt(P^2 - 4)) equals (P - sqrt(P^2 - 4)) / 2 without cancellation
    p = 2.0 / (P + math.sqrt(P * P - 4.0))
    return PoleParam(p=p, P=P)


def in_closed_disk(z: complex, tol: float = TAU_DISK) -> bool:
    return abs(z) <= 1.0 + tol


def find_root_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = BISECT_WIDTH,
    max_iter: int = BISECT_MAX_ITER,
) -> float:
    """Bisection on a sign-changing bracket; deterministic for fixed inputs."""
    if lo > hi:
        lo, hi = hi, lo
    f_lo = f(lo)
    f_hi = f(hi)
    if f_lo * f_hi >= 0.0:
        raise BracketError(f"f does not change sign on [{lo!r}, {hi!r}]: f(lo)={f_lo!r}, f(hi)={f_hi!r}")
    n = 0
    while hi - lo > tol and n < max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            log.debug("root_found", extra={"root": mid, "iterations": n, "exact": True})
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        n += 1
    root = 0.5 * (lo + hi)
    log.debug("root_found", extra={"root": root, "iterations": n, "width": hi - lo})
    return root


def horner(coeffs: Sequence[float], x: float) -> float:
    """Evaluate a polynomial given highest-degree coefficient first."""
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


class SpecialPoly(str, Enum):
    U = "U"
    V = "V"
    H = "H"
    F = "F"
    G = "G"


def special_poly_coeffs(which: SpecialPoly, P: float) -> list:
    """Coefficients (highest degree first) in the polynomial's own variable.

    U and V are polynomials in P; H, F and G are quadratics in mu whose
    coefficients depend on P.
    """
    P2 = P * P
    P4 = P2 * P2
    if which is SpecialPoly.U:
        return [6.0, -1.0, -38.0, -28.0, 4.0]
    if which is SpecialPoly.V:
        return [1.0, 0.0, -16.0, 0.0, 84.0, 0.0, -176.0, 0.0, 132.0]
    if which is SpecialPoly.H:
        return [-36.0, 4.0 + P2 + 4.0 * P4, -4.0 * P2 * (P2 - 2.0)]
    if which is SpecialPoly.F:
        return [
            2.0 * (P2 - 1.0) * (P2 - 2.0) ** 2,
            -P2 * (3.0 * P4 - 12.0 * P2 + 14.0),
            P4 * (P2 - 2.0),
        ]
    if which is SpecialPoly.G:
        return [2.0 * P2 * (P2 - 1.0), -(3.0 * P4 - 4.0 * P2 - 2.0), P2 * (P2 - 2.0)]
    raise DomainError(f"unknown polynomial {which!r}")


def eval_special_poly(which: SpecialPoly, param: PoleParam, mu: Optional[float] = None) -> float:
    which = SpecialPoly(which)
    coeffs = special_poly_coeffs(which, param.P)
    if which in (SpecialPoly.U, SpecialPoly.V):
        return horner(coeffs, param.P)
    if mu is None:
        raise DomainError(f"{which.value} is a polynomial in mu; mu is required")
    return horner(coeffs, mu)


def u_value(P: float) -> float:
    return horner(special_poly_coeffs(SpecialPoly.U, P), P)


def v_value(P: float) -> float:
    return horner(special_poly_coeffs(SpecialPoly.V, P), P)


def count_sign_changes(f: Callable[[float], float], lo: float, hi: float, step: float) -> int:
    n = int(math.floor((hi - lo) / step))
    changes = 0
    prev = f(lo + step)
    for k in range(2, n):
        cur = f(lo + k * step)
        if cur == 0.0:
            continue
        if prev != 0.0 and (cur < 0.0) != (prev < 0.0):
            changes += 1
        prev = cur
    return changes


@lru_cache(maxsize=1)
def constants():
    """The named constants: P*, P2, P1, P0 and their p counterparts."""
    P_star = find_root_bracketed(u_value, 2.0, 4.0)
    P_2 = find_root_bracketed(v_value, 2.5, 3.0)
    P_1 = find_root_bracketed(v_value, 2.0, 2.5)
    P_0 = (1.0 + math.sqrt(37.0)) / 3.0
    out = NamedConstants(
        P_star=P_star,
        p_star=p_from_P(P_star).p,
        P_2=P_2,
        p_2=p_from_P(P_2).p,
        P_1=P_1,
        p_1=p_from_P(P_1).p,
        P_0=P_0,
        p_0=p_from_P(P_0).p,
    )
    log.info("constants_computed", extra={"P_star": P_star, "P_2": P_2, "P_1": P_1, "P_0": P_0})
    return out


GOLDEN_ITERATIONS = 50
REFINE_ROUNDS = 4
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    iterations: int = GOLDEN_ITERATIONS,
) -> tuple:
    """Golden-section search for a maximum on [lo, hi].

    Returns ``(x, f(x))`` for the best point evaluated, endpoints included,
    so a non-unimodal f never yields something worse than the bracket ends.
    """
    best_x, best_v = lo, f(lo)
    v_hi = f(hi)
    if v_hi > best_v:
        best_x, best_v = hi, v_hi
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc > best_v:
            best_x, best_v = c, fc
        if fd > best_v:
            best_x, best_v = d, fd
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    for x, v in ((c, fc), (d, fd)):
        if v > best_v:
            best_x, best_v = x, v
    return best_x, best_v


def maximize_over_disk(
    objective: Callable[[np.ndarray], np.ndarray],
    n_radial: int,
    n_angular: int,
    iterations: int = GOLDEN_ITERATIONS,
    rounds: int = REFINE_ROUNDS,
) -> tuple:
    """Maximise a real objective over the closed unit disk.

    Scans the polar grid r_i = i/(n_radial-1), theta_j = 2 pi j/n_angular, then
    alternates golden-section passes in r and in theta inside the grid cells
    around the argmax (the first in row-major order). ``objective`` must accept
    complex arrays. Returns ``(value, z_argmax)``.
    """
    if n_radial < 2 or n_angular < 8:
        raise DomainError(f"grid too small: {n_radial}x{n_angular}")
    radii = np.linspace(0.0, 1.0, n_radial)
    dtheta = 2.0 * np.pi / n_angular
    thetas = dtheta * np.arange(n_angular)
    grid = radii[:, None] * np.exp(1j * thetas[None, :])
    values = np.asarray(objective(grid), dtype=float)
    flat = int(np.argmax(values))
    i, j = divmod(flat, n_angular)
    best_v = float(values[i, j])

    def at(r: float, theta: float) -> float:
        return float(objective(np.array([r * np.exp(1j * theta)]))[0])

    r_lo = float(radii[max(i - 1, 0)])
    r_hi = float(radii[min(i + 1, n_radial - 1)])
    t_lo = float(thetas[j]) - dtheta
    t_hi = float(thetas[j]) + dtheta
    r_star, theta_star = float(radii[i]), float(thetas[j])
    for _ in range(max(rounds, 1)):
        r_new, v = golden_section_max(lambda r: at(r, theta_star), r_lo, r_hi, iterations)
        if v > best_v:
            best_v, r_star = v, r_new
        if r_star == 0.0:
            break
        t_new, v = golden_section_max(lambda t: at(r_star, t), t_lo, t_hi, iterations)
        if v > best_v:
            best_v, theta_star = v, t_new
    best_z = r_star * complex(math.cos(theta_star), math.sin(theta_star))
    log.debug("oracle_refined", extra={"grid": [n_radial, n_angular], "value": best_v})
    return best_v, best_z
