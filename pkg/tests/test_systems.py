import math
from fractions import Fraction

import numpy as np
import pytest

from utils.systems import (CapacityExceeded, DimensionMismatch, Variant, at_infinity, build, build_full,
                           build_nonzero, build_p0_reduced, build_p1_nonzero, build_p1_reduced, build_pt,
                           build_y1_one_subset, dehomogenize, embed, eval_system, evaluate_exact, from_json,
                           homogenize, jacobian, residual, restrict, to_json)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_full_system_degrees_and_bezout(n):
    s = build_full(n)
    assert s.degrees == tuple(range(1, n + 1))
    assert s.bezout == math.factorial(n)
    assert s.num_unknowns == n


def test_reduced_bezout_numbers():
    assert build_p0_reduced(5).bezout == math.factorial(4)
    assert build_p1_nonzero(4).bezout == 2 * 2
    assert build_p1_nonzero(5).bezout == 3 * 6
    # 末方程求和从 k = 2 开始时次数为 N − 1
    assert build_pt(4).degrees == (1, 2, 3, 3)
    assert build_pt(4).bezout == 18


def test_capacity_limits():
    with pytest.raises(CapacityExceeded):
        build_full(11)
    with pytest.raises(ValueError):
        build_p1_nonzero(3)


def test_full_system_vanishes_at_peculiar_points():
    s = build_full(2)
    assert evaluate_exact(s, [Fraction(1), Fraction(-2)]) == [0, 0]
    assert evaluate_exact(s, [Fraction(0), Fraction(0)]) == [0, 0]
    assert evaluate_exact(s, [Fraction(1), Fraction(1)]) != [0, 0]
    assert residual(build_full(3), [1, -1, -1]) == 0.0


def test_dimension_mismatch():
    s = build_full(3)
    with pytest.raises(DimensionMismatch):
        eval_system(s, [1, 2])
    with pytest.raises(DimensionMismatch):
        evaluate_exact(s, [Fraction(1)])
    with pytest.raises(DimensionMismatch):
        restrict(build_p0_reduced(3), [1, 2])


def test_kernels_agree_with_term_evaluation():
    rng = np.random.default_rng(3)
    s = build_pt(5)
    y = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    expected = [eq.evaluate(y) for eq in s.equations]
    assert np.allclose(eval_system(s, y), expected, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("variant", [Variant.FULL, Variant.NONZERO, Variant.P1_NONZERO, Variant.TRUE_PECULIAR])
def test_jacobian_matches_finite_differences(variant):
    rng = np.random.default_rng(11)
    s = build(variant, 4)
    k = s.num_unknowns
    h = 1e-5
    for _ in range(100):
        y = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        J = jacobian(s, y)
        columns = [(eval_system(s, y + h * e) - eval_system(s, y - h * e)) / (2 * h) for e in np.eye(k)]
        error = np.max(np.abs(J - np.column_stack(columns)))
        assert error <= 1e-6 * max(1.0, np.max(np.abs(J)))


def test_homogenize_and_dehomogenize():
    s = build_full(3)
    projective = homogenize(s)
    assert projective.projective
    assert projective.unknowns[0] == "y0"
    assert all(eq.is_homogeneous() for eq in projective.equations)
    assert projective.degrees == s.degrees
    assert dehomogenize(projective) == s


def test_at_infinity_keeps_top_degree_part():
    s = at_infinity(build_full(2))
    # 最高次部分：2·y1 与 y1·y2
    assert not s.projective
    assert residual(s, [0, 0]) == 0.0


def test_embed_and_restrict():
    s = build_p0_reduced(3)
    assert embed(s, [1, -2]) == [1, -2, 0]
    assert restrict(s, [1, -2, 0]) == [1, -2]
    p1 = build_p1_reduced(4)
    assert embed(p1, [2, 3, 4]) == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        embed(homogenize(build_full(2)), [1, 1, 1])


def test_p1_reduced_contains_the_n3_unit_point():
    s = build_p1_reduced(3)
    assert residual(s, restrict(s, [1, -1, -1])) == 0.0


def test_y1_one_subset_is_affine_chart():
    s = build_y1_one_subset(4)
    assert not s.projective
    assert s.unknowns == ("y2", "y3", "y4")
    assert s.fixed == ((1, 1),)


def test_nonzero_variant_drops_zero_solutions():
    s = build_nonzero(3)
    assert residual(s, [1, -1, -1]) == 0.0
    assert residual(s, [1, -2, 0]) > 0.1


def test_json_round_trip():
    s = build_pt(4, printed=True)
    restored = from_json(to_json(s))
    assert restored == s
    assert to_json(restored)['bezout'] == s.bezout
