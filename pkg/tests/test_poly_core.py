import numpy as np
import pytest

from utils.poly_core import (MonicPoly, NonConvergence, RootOptions, ZeroSet, conj, elementary_symmetric,
                             eval_poly, find_roots, is_peculiar, match_multisets, satisfies_eq3, scale,
                             ulam_transform)


def _sorted(values):
    return sorted((complex(v) for v in values), key=lambda z: (round(z.real, 8), round(z.imag, 8)))


def test_ulam_transform_of_one_and_minus_two():
    p = ulam_transform(ZeroSet((1, -2)))
    assert p.coeffs == (1 + 0j, -2 + 0j)


def test_elementary_symmetric_ignores_order():
    a = elementary_symmetric(ZeroSet((1, 2j, -3)))
    b = elementary_symmetric(ZeroSet((-3, 1, 2j)))
    assert a == b
    assert a[0] == pytest.approx(-2 + 2j)


def test_elementary_symmetric_rejects_empty():
    with pytest.raises(ValueError):
        elementary_symmetric(ZeroSet(()))


def test_monic_poly_requires_coefficients():
    with pytest.raises(ValueError):
        MonicPoly(())


def test_scale_and_conj():
    assert scale(MonicPoly((0.5, -0.25))) == 1.0
    assert scale(MonicPoly((3j, 1))) == 3.0
    assert conj(ZeroSet((1 + 2j, -1j))).elements == (1 - 2j, 1j)


def test_eval_poly_scalar_and_array():
    p = MonicPoly((1, -2))
    assert eval_poly(p, 1) == 0
    assert np.allclose(eval_poly(p, np.array([1.0, -2.0, 0.0])), [0.0, 0.0, -2.0])


def test_find_roots_cube_roots_of_unity():
    roots = find_roots(MonicPoly((0, 0, -1)))
    expected = np.exp(2j * np.pi * np.arange(3) / 3)
    assert np.allclose(_sorted(roots.elements), _sorted(expected), atol=1e-10)
    assert all(c.multiplicity == 1 for c in roots.clusters)


def test_find_roots_merges_multiple_root():
    roots = find_roots(MonicPoly((0, 0, 0, 0)))
    assert len(roots) == 4
    assert len(roots.clusters) == 1
    assert roots.clusters[0].multiplicity == 4
    assert abs(roots.clusters[0].value) < 1e-6


def test_find_roots_double_and_simple_roots():
    # (z − 1)(z + 1)^2
    roots = find_roots(MonicPoly((1, -1, -1)))
    multiplicities = sorted((round(c.value.real), c.multiplicity) for c in roots.clusters)
    assert multiplicities == [(-1, 2), (1, 1)]


def test_find_roots_linear():
    roots = find_roots(MonicPoly((3 - 1j,)))
    assert roots.elements == (-3 + 1j,)


def test_find_roots_raises_when_iterations_exhausted():
    p = MonicPoly(tuple(np.arange(1, 9)))
    with pytest.raises(NonConvergence):
        find_roots(p, RootOptions(max_iters=1))


def _unit_disc_sample(rng, n, separation=1e-3):
    while True:
        x = np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
        gaps = np.abs(x[:, None] - x[None, :]) + np.eye(n)
        if np.all(gaps > separation):
            return x


def test_zeros_coefficients_round_trip():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        x = _unit_disc_sample(rng, int(rng.integers(1, 9)))
        roots = find_roots(ulam_transform(ZeroSet(tuple(x))))
        assert match_multisets(roots, ZeroSet(tuple(x)), 1e-8) is not None


def test_elementary_symmetric_commutes_with_conjugation():
    rng = np.random.default_rng(5)
    for n in range(1, 9):
        x = ZeroSet(tuple(rng.standard_normal(n) + 1j * rng.standard_normal(n)))
        direct = np.array(elementary_symmetric(conj(x)))
        mirrored = np.conj(elementary_symmetric(x))
        assert np.max(np.abs(direct - mirrored)) <= 1e-13 * max(1.0, np.max(np.abs(mirrored)))


def test_match_multisets_pairs_and_rejects():
    a = ZeroSet((1, 2, 3))
    b = ZeroSet((3, 1, 2 + 1e-9))
    pairs = match_multisets(a, b, 1e-6)
    assert sorted(pairs) == [(0, 1), (1, 2), (2, 0)]
    assert match_multisets(a, ZeroSet((1, 2, 4)), 1e-6) is None
    with pytest.raises(ValueError):
        match_multisets(a, ZeroSet((1, 2)), 1e-6)


def test_is_peculiar_small_cases():
    assert is_peculiar(MonicPoly((1, -2)))
    assert is_peculiar(MonicPoly((0, 0)))
    assert is_peculiar(MonicPoly((1, -1, -1)))
    assert not is_peculiar(MonicPoly((1, 1)))


def test_eq3_is_necessary_but_not_sufficient():
    # z^2 − 1: 系数 0 与 −1 不是零点
    assert not satisfies_eq3(MonicPoly((0, -1)))
    assert satisfies_eq3(MonicPoly((1, -2)))
    # z^3 − z^2 − z + 1 = (z − 1)^2 (z + 1)：系数 (−1, −1, 1) 都是零点，但重数不符
    p = MonicPoly((-1, -1, 1))
    assert satisfies_eq3(p)
    assert not is_peculiar(p)


def test_eq3_without_peculiarity_at_minus_one_half():
    # z^2 − z/2 − 1/2 = (z − 1)(z + 1/2)：系数 −1/2 是零点，零点 1 却不是系数
    p = MonicPoly((-0.5, -0.5))
    assert satisfies_eq3(p)
    assert not is_peculiar(p)
