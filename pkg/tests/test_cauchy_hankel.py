"""Reciprocal index-sum tensors: conversions, definiteness, monotonicity."""

import numpy as np
import pytest

from tenstruct import cauchy, cauchy_hankel, hankel
from tenstruct.errors import DegenerateGeneratorError, InputError, UnsupportedQueryError


def valid_random_specs(rng, count, orders=(2, 4), dims=(2, 3, 4), min_denom=0.5):
    out = []
    while len(out) < count:
        m = int(rng.choice(orders))
        n = int(rng.choice(dims))
        g = float(rng.uniform(-10, 10))
        h = float(rng.choice([-1, 1]) * rng.uniform(0.3, 3))
        denoms = [g + h * s for s in range(m, n * m + 1)]
        if min(abs(x) for x in denoms) < min_denom:
            continue
        out.append(cauchy_hankel.build(g, h, m, n))
    return out


# -- build -------------------------------------------------------------------------


def test_build_examples():
    spec = cauchy_hankel.build(1, 1, 4, 3)
    assert cauchy_hankel.dense(spec).entry((1, 1, 1, 1)) == pytest.approx(0.2)
    t = cauchy_hankel.dense(cauchy_hankel.build(0.5, 1, 2, 2))
    np.testing.assert_allclose(
        [[t.entry((1, 1)), t.entry((1, 2))], [t.entry((2, 1)), t.entry((2, 2))]],
        [[1 / 2.5, 1 / 3.5], [1 / 3.5, 1 / 4.5]],
    )


def test_build_degenerate_names_sum():
    with pytest.raises(DegenerateGeneratorError, match="s = 4"):
        cauchy_hankel.build(-4, 1, 4, 3)
    with pytest.raises(InputError):
        cauchy_hankel.build(1, 0, 4, 3)


# -- conversions -------------------------------------------------------------------


def test_as_cauchy_generating_vector():
    spec = cauchy_hankel.build(1, 1, 4, 3)
    assert cauchy_hankel.as_cauchy(spec).c == (1.25, 2.25, 3.25)
    # all d entries default to ones
    assert cauchy_hankel.as_cauchy(spec).d == (1.0, 1.0, 1.0)


def test_as_hankel_generating_vector():
    spec = cauchy_hankel.build(1, 1, 4, 3)
    v = cauchy_hankel.as_hankel(spec).v
    np.testing.assert_allclose(v, [1 / (5 + k) for k in range(9)])
    assert all(a > b for a, b in zip(v, v[1:]))  # strictly decreasing here


def test_three_way_expansion_agreement():
    rng = np.random.default_rng(2)
    for spec in valid_random_specs(rng, 10):
        direct = cauchy_hankel.dense(spec)
        via_cauchy = cauchy.dense(cauchy_hankel.as_cauchy(spec))
        via_hankel = hankel.dense(cauchy_hankel.as_hankel(spec))
        scale = max(1.0, float(np.max(np.abs(direct.values))))
        assert direct.max_abs_diff(via_cauchy) <= 1e-14 * scale
        assert direct.max_abs_diff(via_hankel) <= 1e-14 * scale


# -- positive definiteness ------------------------------------------------------------


def test_is_pd_examples():
    assert cauchy_hankel.is_pd(cauchy_hankel.build(1, 1, 4, 3))
    # g + mh < 0 (g = -4.5 keeps every denominator nonzero)
    spec = cauchy_hankel.build(-4.5, 1, 4, 3)
    assert not cauchy_hankel.is_pd(spec)
    assert cauchy_hankel.dense(spec).apply([1, 0, 0]) == pytest.approx(1 / (-0.5))
    assert cauchy_hankel.is_pd(cauchy_hankel.build(13, -1, 4, 3))


def test_is_pd_odd_order_rejected():
    with pytest.raises(UnsupportedQueryError):
        cauchy_hankel.is_pd(cauchy_hankel.build(1, 1, 3, 3))


def test_is_pd_implies_cauchy_pd_criterion():
    rng = np.random.default_rng(3)
    for spec in valid_random_specs(rng, 20, orders=(2, 4)):
        if cauchy_hankel.is_pd(spec):
            assert cauchy.is_pd(cauchy_hankel.as_cauchy(spec))


# -- monotonicity -----------------------------------------------------------------------


def test_monotone_pairs_never_equal_and_ordered():
    ys, xs = cauchy_hankel.monotone_pairs(3, 50, seed=4)
    assert np.all(xs >= ys)
    assert np.all(np.max(xs - ys, axis=1) > 0)
    # proof-decisive boundary pairs present
    np.testing.assert_allclose(ys[0], 0.0)
    np.testing.assert_allclose(xs[0], [1, 0, 0])
    np.testing.assert_allclose(xs[2], [0, 0, 1])


def test_monotone_pd_spec_clean():
    spec = cauchy_hankel.build(1, 1, 4, 3)
    verdict = cauchy_hankel.check_strict_monotone_on_orthant(spec, 10_000, seed=0)
    assert not verdict.violated


def test_monotone_non_pd_spec_violated_at_boundary_pair():
    spec = cauchy_hankel.build(-4.5, 1, 4, 3)
    verdict = cauchy_hankel.check_strict_monotone_on_orthant(spec, 100, seed=0)
    assert verdict.violated
    assert verdict.x == (1.0, 0.0, 0.0)
    assert verdict.y == (0.0, 0.0, 0.0)
    assert verdict.fx == pytest.approx(-2.0)  # f(e_1) = 1/(g+mh) = -2


def test_monotone_needs_even_order():
    with pytest.raises(UnsupportedQueryError):
        cauchy_hankel.check_strict_monotone_on_orthant(
            cauchy_hankel.build(1, 1, 3, 3), 10, seed=0
        )
    with pytest.raises(InputError):
        cauchy_hankel.check_strict_monotone_on_orthant(
            cauchy_hankel.build(1, 1, 4, 3), 0, seed=0
        )
