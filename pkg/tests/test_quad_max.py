import math

import pytest

from app.errors import DomainError
from app.models import QuadCoeffs, YBranch
from app.quad_max import ray_continuity_gap, r_closed, y_closed, y_lower_bound, y_oracle
from app.verify import minus_parabola_triples


def test_zero_triple_is_the_paraboloid_top():
    value, branch = y_closed(QuadCoeffs(0.0, 0.0, 0.0))
    assert value == 1.0
    assert branch is YBranch.plus_parabola


def test_sum_all_example():
    # P = 3, mu = 0
    value, branch = y_closed(QuadCoeffs(63.0, 9.0, 0.0))
    assert value == 72.0
    assert branch is YBranch.sum_all
    assert y_closed(QuadCoeffs(1.0, 0.0, 1.0)) == (2.0, YBranch.sum_all)


def test_plus_parabola_neg_example():
    value, branch = y_closed(QuadCoeffs(1.0, 0.0, -0.5))
    assert branch is YBranch.plus_parabola_neg
    assert value == 2.0


def test_complex_coefficients_rejected():
    with pytest.raises(DomainError):
        QuadCoeffs(1j, 0.0, 0.0)
    with pytest.raises(DomainError):
        QuadCoeffs(math.nan, 0.0, 0.0)


def test_r_needs_opposite_signs():
    with pytest.raises(DomainError):
        r_closed(QuadCoeffs(1.0, 1.0, 1.0))


def test_continuity_where_plus_parabola_meets_r():
    # a = 1, c = -1/2: k = 6 and R3 = 3 at b^2 = k
    b = math.sqrt(6.0)
    below, branch_below = y_closed(QuadCoeffs(1.0, b - 1e-9, -0.5))
    above, branch_above = y_closed(QuadCoeffs(1.0, b + 1e-9, -0.5))
    assert branch_below is YBranch.plus_parabola_neg
    assert branch_above is YBranch.r3
    assert abs(below - 3.0) < 1e-7
    assert abs(above - 3.0) < 1e-7


def test_continuity_where_minus_parabola_meets_plus_parabola():
    # a = 0.05, c = -0.2: k = 0.96, both sides give 1.25
    b = math.sqrt(0.96)
    below, branch_below = y_closed(QuadCoeffs(0.05, b - 1e-9, -0.2))
    above, branch_above = y_closed(QuadCoeffs(0.05, b + 1e-9, -0.2))
    assert branch_below is YBranch.plus_parabola_neg
    assert branch_above is YBranch.minus_parabola
    assert abs(below - 1.25) < 1e-7
    assert abs(above - 1.25) < 1e-7


def test_symmetric_under_negation(rng):
    for a, b, c in rng.uniform(-5.0, 5.0, size=(50, 3)):
        q = QuadCoeffs(float(a), float(b), float(c))
        assert abs(y_closed(q)[0] - y_closed(q.negated())[0]) < 1e-12


def test_lower_bound_never_exceeds_closed_form(rng):
    for a, b, c in rng.uniform(-5.0, 5.0, size=(200, 3)):
        q = QuadCoeffs(float(a), float(b), float(c))
        assert y_lower_bound(q) <= y_closed(q)[0] + 1e-12


def test_oracle_agrees_with_closed_form(rng):
    for a, b, c in rng.uniform(-5.0, 5.0, size=(25, 3)):
        q = QuadCoeffs(float(a), float(b), float(c))
        closed, _ = y_closed(q)
        oracle = y_oracle(q, 401, 1024)
        # the oracle evaluates actual points, so it can only undershoot
        assert oracle <= closed + 1e-9
        assert closed - oracle < 5e-4


@pytest.mark.parametrize(
    "triple, expected, branch",
    [
        ((1.0, 3.0, 0.0), 4.0, YBranch.sum_all),
        ((2.0, 1.0, 0.0), 3.25, YBranch.plus_parabola),
        ((1.0, 0.0, -1.0), 2.0, YBranch.r3),
        ((1.0, 10.0, -0.1), 10.9, YBranch.r1),
        ((0.01, 10.0, -1.0), 10.99, YBranch.r2),
    ],
)
def test_closed_form_cases(triple, expected, branch):
    value, got = y_closed(QuadCoeffs(*triple))
    assert got is branch
    assert abs(value - expected) < 1e-12


def test_r_cases_directly():
    value, branch = r_closed(QuadCoeffs(1.0, 10.0, -0.1))
    assert branch is YBranch.r1 and abs(value - 10.9) < 1e-12
    value, branch = r_closed(QuadCoeffs(0.01, 10.0, -1.0))
    assert branch is YBranch.r2 and abs(value - 10.99) < 1e-12
    assert r_closed(QuadCoeffs(1.0, 0.0, -1.0)) == (2.0, YBranch.r3)


def test_oracle_examples():
    assert y_oracle(QuadCoeffs(0.0, 0.0, 0.0), 101, 256) == 1.0
    assert abs(y_oracle(QuadCoeffs(1.0, 3.0, 0.0), 401, 1024) - 4.0) < 1e-6
    assert abs(y_oracle(QuadCoeffs(1.0, 0.0, -1.0), 401, 1024) - 2.0) < 1e-6


def test_symmetric_under_flipping_b(rng):
    for a, b, c in rng.uniform(-5.0, 5.0, size=(50, 3)):
        q = QuadCoeffs(float(a), float(b), float(c))
        flipped = QuadCoeffs(q.a, -q.b, q.c)
        assert y_closed(q) == y_closed(flipped)
    for a, b, c in rng.uniform(-3.0, 3.0, size=(5, 3)):
        q = QuadCoeffs(float(a), float(b), float(c))
        assert abs(y_oracle(q, 401, 1024) - y_oracle(QuadCoeffs(q.a, -q.b, q.c), 401, 1024)) < 1e-6
        assert abs(y_oracle(q, 401, 1024) - y_oracle(q.negated(), 401, 1024)) < 1e-6


def test_minus_parabola_against_oracle(rng):
    triples = minus_parabola_triples(rng, 20)
    for q in triples:
        closed, branch = y_closed(q)
        assert branch is YBranch.minus_parabola
        oracle = y_oracle(q, 401, 1024)
        assert oracle <= closed + 1e-9
        assert closed - oracle < 1e-4


def test_continuous_along_seeded_rays(rng):
    switches = 0
    seen = set()
    for start, direction in zip(rng.uniform(-2.0, 2.0, size=(200, 3)), rng.normal(size=(200, 3))):
        q = QuadCoeffs(*map(float, start))
        gap, found = ray_continuity_gap(q, tuple(direction))
        assert gap < 1e-9, (q, direction)
        switches += found
        seen.add(y_closed(q)[1])
    assert switches > 0
    assert len(seen) >= 4


def test_continuous_through_the_minus_parabola_window():
    # b runs 0.5 -> 1.9 at a = 0.05, c = -0.2: PlusParabolaNeg, MinusParabola, then R2
    gap, found = ray_continuity_gap(QuadCoeffs(0.05, 0.5, -0.2), (0.0, 1.4, 0.0))
    assert found == 2
    assert gap < 1e-9
    assert y_closed(QuadCoeffs(0.05, 1.6 + 1e-9, -0.2))[1] is YBranch.r2


def test_ray_needs_two_steps():
    with pytest.raises(DomainError):
        ray_continuity_gap(QuadCoeffs(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), steps=1)
