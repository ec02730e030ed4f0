"""Maximum of |a + b z + c z^2| + 1 - |z|^2 over the closed unit disk.

``y_closed`` walks the case tree for real coefficients; ``y_oracle`` is an
independent grid search used to check it.
"""
from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from .errors import DomainError
from .models import QuadCoeffs, YBranch
from .numeric_core import GOLDEN_ITERATIONS, maximize_over_disk
from .utils import get_logger

log = get_logger("quad_max")


def _real_triple(q: QuadCoeffs) -> Tuple[float, float, float]:
    return float(q.a), float(q.b), float(q.c)


def r_closed(q: QuadCoeffs) -> Tuple[float, YBranch]:
    a, b, c = _real_triple(q)
    if not a * c < 0.0:
        raise DomainError(f"R(a,b,c) needs ac < 0, got a={a!r}, c={c!r}")
    A, B, C = abs(a), abs(b), abs(c)
    if C * (B + 4.0 * A) <= A * B:
        return A + B - C, YBranch.r1
    if A * B <= C * (B - 4.0 * A):
        return -A + B + C, YBranch.r2
    return (C + A) * math.sqrt(1.0 - b * b / (4.0 * a * c)), YBranch.r3


def y_closed(q: QuadCoeffs) -> Tuple[float, YBranch]:
    a, b, c = _real_triple(q)
    A, B, C = abs(a), abs(b), abs(c)
    b2 = b * b
    if a * c >= 0.0:
        if B >= 2.0 * (1.0 - C):
            return A + B + C, YBranch.sum_all
        return 1.0 + A + b2 / (4.0 * (1.0 - C)), YBranch.plus_parabola
    # -4ac(c^-2 - 1), written without forming c^-2
    k = -4.0 * a * (1.0 - c * c) / c
    if k <= b2 and B < 2.0 * (1.0 - C):
        return 1.0 - A + b2 / (4.0 * (1.0 - C)), YBranch.minus_parabola
    if b2 < min(4.0 * (1.0 + C) ** 2, k):
        return 1.0 + A + b2 / (4.0 * (1.0 + C)), YBranch.plus_parabola_neg
    return r_closed(q)


def quad_objective(q: QuadCoeffs):
    a, b, c = _real_triple(q)

    def objective(z: np.ndarray) -> np.ndarray:
        return np.abs(a + z * (b + c * z)) + 1.0 - (z.real ** 2 + z.imag ** 2)

    return objective


def y_oracle(
    q: QuadCoeffs,
    n_radial: int = 801,
    n_angular: int = 2048,
    iterations: int = GOLDEN_ITERATIONS,
) -> float:
    value, z_star = maximize_over_disk(quad_objective(q), n_radial, n_angular, iterations)
    log.debug("y_oracle", extra={"a": q.a, "b": q.b, "c": q.c, "value": value, "argmax": [z_star.real, z_star.imag]})
    return value


def y_lower_bound(q: QuadCoeffs) -> float:
    """Values at z = 0, 1, -1."""
    return max(abs(q.a) + 1.0, abs(q.a + q.b + q.c), abs(q.a - q.b + q.c))


def ray_continuity_gap(
    start: QuadCoeffs,
    direction: Tuple[float, float, float],
    steps: int = 400,
    width: float = 1e-13,
) -> Tuple[float, int]:
    """Largest jump of y_closed where its case changes along start + t * direction, t in [0, 1].

    Each change between adjacent samples is bisected down to ``width`` in t.
    Returns the jump and the number of changes found.
    """
    if steps < 2:
        raise DomainError(f"need at least 2 steps along the ray, got {steps}")
    a0, b0, c0 = _real_triple(start)
    da, db, dc = (float(x) for x in direction)

    def at(t: float) -> Tuple[float, YBranch]:
        return y_closed(QuadCoeffs(a0 + t * da, b0 + t * db, c0 + t * dc))

    worst = 0.0
    switches = 0
    ts = np.linspace(0.0, 1.0, steps)
    prev_t, (_, prev_branch) = 0.0, at(0.0)
    for t in ts[1:]:
        t = float(t)
        _, branch = at(t)
        if branch is not prev_branch:
            lo, hi = prev_t, t
            while hi - lo > width:
                mid = 0.5 * (lo + hi)
                if at(mid)[1] is prev_branch:
                    lo = mid
                else:
                    hi = mid
            worst = max(worst, abs(at(hi)[0] - at(lo)[0]))
            switches += 1
        prev_t, prev_branch = t, branch
    return worst, switches
