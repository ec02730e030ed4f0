"""Sharp bound Phi(P, mu) of |a3 - mu a2^2| over concave functions with a pole at p."""
from __future__ import annotations

import math
from typing import List, Optional, Tuple

import numpy as np

from .errors import InternalInconsistencyError
from .models import PhiBranch, PoleParam, ProofRegion, QuadCoeffs, SchurPair, ThresholdRow, Thresholds
from .numeric_core import constants, maximize_over_disk, p_from_P, v_value
from .quad_max import y_closed
from .utils import get_logger

ORACLE_GRID = (401, 1024)

log = get_logger("fekete_szego")


def abc_from(pp: PoleParam, mu: float) -> QuadCoeffs:
    P = pp.P
    a = 3.0 * P * (P * P - 2.0 - mu * (P - 1.0 / P) ** 2)
    b = 3.0 * P - 6.0 * mu * (P - 1.0 / P)
    c = -3.0 * mu / P
    return QuadCoeffs(a=a, b=b, c=c)


def thresholds(pp: PoleParam) -> Thresholds:
    P = pp.P
    P2 = P * P
    P4 = P2 * P2
    named = constants()

    mu1 = 0.5 - 1.0 / (3.0 * P)
    mu1prime = P * (3.0 * P + 2.0) / (6.0 * (P2 - 2.0))
    disc0 = 16.0 * P4 * P4 + 8.0 * P4 * P2 - 543.0 * P4 + 1160.0 * P2 + 16.0
    mu0plus = (4.0 + P2 + 4.0 * P4 + math.sqrt(disc0)) / 72.0
    # product of the roots of H is P^2 (P^2 - 2) / 9
    mu0minus = P2 * (P2 - 2.0) / (9.0 * mu0plus)
    mu2 = min(mu0minus, mu1prime)

    disc4 = math.sqrt(P4 * P4 - 12.0 * P4 + 16.0 * P2 + 4.0)
    den4 = 4.0 * P2 * (P2 - 1.0)
    mu4plus = (3.0 * P4 - 4.0 * P2 - 2.0 + disc4) / den4
    mu4minus = (3.0 * P4 - 4.0 * P2 - 2.0 - disc4) / den4

    den3 = 4.0 * (P2 - 1.0) * (P2 - 2.0) ** 2
    lin3 = P2 * (3.0 * P4 - 12.0 * P2 + 14.0)
    mu3minus: Optional[float] = None
    mu3plus: Optional[float] = None
    if P >= named.P_2:
        root = P2 * math.sqrt(max(v_value(P), 0.0))
        mu3minus = (lin3 - root) / den3
        mu3plus = (lin3 + root) / den3

    return Thresholds(
        P=P,
        mu1=mu1,
        mu1prime=mu1prime,
        mu0minus=mu0minus,
        mu0plus=mu0plus,
        mu2=mu2,
        mu4minus=mu4minus,
        mu4plus=mu4plus,
        muA=(P2 - 2.0) / (P - 1.0 / P) ** 2,
        muB=P / (2.0 * (P - 1.0 / P)),
        muF=lin3 / den3,
        muG=(3.0 * P4 - 4.0 * P2 - 2.0) / den4,
        P_star=named.P_star,
        P_2=named.P_2,
        p_star=named.p_star,
        p_2=named.p_2,
        mu3minus=mu3minus,
        mu3plus=mu3plus,
    )


def psi_branch(P: float, mu: float, th: Thresholds) -> PhiBranch:
    """Linear or square-root form of Psi at (P, mu)."""
    if th.has_mu3:
        if th.P_2 <= P <= th.P_star and th.mu3minus <= mu <= th.mu3plus:
            return PhiBranch.psi_linear
        if P >= th.P_star and th.mu2 <= mu <= th.mu3plus:
            return PhiBranch.psi_linear
    return PhiBranch.psi_sqrt


def linear_low(P: float, mu: float) -> float:
    return (1.0 - mu) * P * P - 1.0


def rational_mid(P: float, mu: float) -> float:
    return -(P ** 3 - 2.0 * P + 3.0) / 3.0 + (P + 2.0) ** 2 * (2.0 * P - 1.0) ** 2 / (12.0 * (P + 3.0 * mu))


def psi_linear(P: float, mu: float) -> float:
    return P * P - 3.0 - mu * (P * P - 4.0 + 4.0 / (P * P))


def psi_sqrt(P: float, mu: float) -> float:
    P2 = P * P
    den = 4.0 * mu * ((1.0 - mu) * (P2 - 1.0) ** 2 - 1.0)
    num = P2 - 4.0 * mu
    if den <= 0.0 or num < 0.0:
        raise InternalInconsistencyError(
            f"square-root branch undefined at P={P!r}, mu={mu!r} (num={num!r}, den={den!r})"
        )
    return (1.0 - mu) * P * (P2 - 2.0) * math.sqrt(num / den)


def linear_high(P: float, mu: float) -> float:
    return (mu - 1.0) * P * P + 1.0


_BRANCH_FORMULAS = {
    PhiBranch.linear_low: linear_low,
    PhiBranch.rational_mid: rational_mid,
    PhiBranch.psi_linear: psi_linear,
    PhiBranch.psi_sqrt: psi_sqrt,
    PhiBranch.linear_high: linear_high,
}


def branch_value(branch: PhiBranch, P: float, mu: float) -> float:
    """Evaluate one branch formula regardless of where mu lies."""
    return _BRANCH_FORMULAS[PhiBranch(branch)](P, mu)


def phi_branch(pp: PoleParam, mu: float, th: Optional[Thresholds] = None) -> PhiBranch:
    th = th or thresholds(pp)
    if mu <= th.mu1:
        return PhiBranch.linear_low
    if mu <= th.mu2:
        return PhiBranch.rational_mid
    if mu <= th.mu4:
        return psi_branch(pp.P, mu, th)
    return PhiBranch.linear_high


def phi_closed(pp: PoleParam, mu: float, th: Optional[Thresholds] = None) -> Tuple[float, PhiBranch]:
    branch = phi_branch(pp, mu, th)
    return branch_value(branch, pp.P, mu), branch


def phi_via_y(pp: PoleParam, mu: float) -> float:
    value, _ = y_closed(abc_from(pp, mu))
    return value / (3.0 * pp.P)


def _sigma_form(pp: PoleParam, mu: float) -> Tuple[float, float, float]:
    """Coefficients of a3 - mu a2^2 in sigma0 at sigma1 = 0."""
    P = pp.P
    alpha = P * P - 2.0 - mu * (P - 1.0 / P) ** 2
    beta = 1.0 - 2.0 * mu * (1.0 - 1.0 / (P * P))
    gamma = -mu / (P * P)
    return alpha, beta, gamma


def _oracle_search(pp: PoleParam, mu: float, n_radial: int, n_angular: int) -> Tuple[float, complex]:
    alpha, beta, gamma = _sigma_form(pp, mu)
    scale = 1.0 / (3.0 * pp.P)

    def objective(s: np.ndarray) -> np.ndarray:
        return np.abs(alpha + s * (beta + gamma * s)) + scale * (1.0 - (s.real ** 2 + s.imag ** 2))

    return maximize_over_disk(objective, n_radial, n_angular)


def phi_oracle(pp: PoleParam, mu: float, n_radial: int = ORACLE_GRID[0], n_angular: int = ORACLE_GRID[1]) -> float:
    """Brute-force Phi over sigma0 in the closed disk with sigma1 optimised out."""
    value, _ = _oracle_search(pp, mu, max(n_radial, 101), max(n_angular, 256))
    return value


def extremal_sigma0(pp: PoleParam, mu: float, n_radial: int = ORACLE_GRID[0], n_angular: int = ORACLE_GRID[1]) -> complex:
    _, s0 = _oracle_search(pp, mu, max(n_radial, 101), max(n_angular, 256))
    return s0


def extremal_pair(pp: PoleParam, mu: float, n_radial: int = ORACLE_GRID[0], n_angular: int = ORACLE_GRID[1]) -> SchurPair:
    """A Schur pair whose functional value has modulus (close to) Phi."""
    s0 = extremal_sigma0(pp, mu, n_radial, n_angular)
    alpha, beta, gamma = _sigma_form(pp, mu)
    head = alpha + s0 * (beta + gamma * s0)
    # the sigma1 term enters with a minus sign, so align it against head
    s1 = -head / abs(head) if abs(head) > 0.0 else 1.0 + 0.0j
    return SchurPair(sigma0=s0, sigma1=s1)


def branch_regions(pp: PoleParam, mu: float, th: Optional[Thresholds] = None) -> ProofRegion:
    """Which of D1 / D2 / D3 (splitting mu2 < mu < muA) holds (P, mu)."""
    th = th or thresholds(pp)
    P = pp.P
    if not th.mu2 < mu < th.muA:
        return ProofRegion.outside
    if th.has_mu3:
        if th.P_2 <= P < th.P_star and th.mu3minus <= mu <= th.mu3plus:
            return ProofRegion.d1
        if P >= th.P_star and th.mu2 < mu <= th.mu3plus:
            return ProofRegion.d1
    if th.mu4plus <= mu:
        return ProofRegion.d2
    return ProofRegion.d3


def scan_thresholds(P_min: float, P_max: float, step: float) -> List[ThresholdRow]:
    n = int(math.floor((P_max - P_min) / step + 1e-9)) + 1
    rows: List[ThresholdRow] = []
    for k in range(n):
        P = P_min + k * step
        th = thresholds(p_from_P(P))
        rows.append(ThresholdRow(P=P, mu1=th.mu1, mu2=th.mu2, mu3m=th.mu3minus, mu3p=th.mu3plus, mu4=th.mu4))
    log.info("thresholds_scanned", extra={"rows": len(rows), "P_min": P_min, "P_max": P_max, "step": step})
    return rows
