"""Canonical storage, multilinear evaluation, rank-one assembly, probes."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tenstruct import cauchy, hankel
from tenstruct import symtensor as sym
from tenstruct.errors import InputError

from helpers import naive_apply, naive_contract, rank_one_entry

EX41 = hankel.build([1, -1, 1, 0, 0, 0, 0, 0, 0], 4, 3)


def random_tensor(order, dim, seed):
    rng = np.random.default_rng(seed)
    vals = rng.uniform(-2, 2, size=sym.num_canonical(order, dim))
    return sym.DenseSymmetricTensor(order, dim, vals)


# -- canonical index machinery -------------------------------------------------


@pytest.mark.parametrize("order,dim", [(2, 2), (3, 3), (4, 3), (4, 4), (5, 2)])
def test_colex_rank_matches_enumeration_order(order, dim):
    rows = sym._rows_cached(order, dim)
    assert rows.shape == (sym.num_canonical(order, dim), order)
    for want, row in enumerate(rows):
        assert sym.canonical_rank(tuple(row)) == want


def test_multiplicities_sum_to_full_cube():
    for order, dim in [(2, 3), (3, 2), (4, 3)]:
        assert sym._mults_cached(order, dim).sum() == dim**order


def test_entry_bounds_checked():
    t = random_tensor(4, 3, 0)
    with pytest.raises(InputError):
        t.entry((0, 1, 1, 1))
    with pytest.raises(InputError):
        t.entry((1, 1, 4, 1))
    with pytest.raises(InputError):
        t.entry((1, 1, 1))


@given(st.permutations([1, 2, 3, 1]))
def test_entry_permutation_invariant(perm):
    t = random_tensor(4, 3, 7)
    assert t.entry(tuple(perm)) == t.entry((1, 1, 2, 3))


def test_shape_guard_env(monkeypatch):
    monkeypatch.setenv(sym.DIM_GUARD_ENV, "3")
    with pytest.raises(InputError, match="TENSTRUCT_MAX_DIM"):
        sym.DenseSymmetricTensor.zeros(2, 4)
    monkeypatch.setenv(sym.DIM_GUARD_ENV, "4")
    sym.DenseSymmetricTensor.zeros(2, 4)
    with pytest.raises(InputError):
        sym.DenseSymmetricTensor.zeros(9, 2)  # beyond desk-scale order


# -- entry ----------------------------------------------------------------------


def test_entry_examples():
    assert hankel.dense(EX41).entry((1, 1, 1, 1)) == 1.0
    ones = cauchy.dense(cauchy.build([0.25] * 3, None, 4))
    for idx in itertools.combinations_with_replacement(range(1, 4), 4):
        assert ones.entry(idx) == pytest.approx(1.0, abs=1e-15)


def test_entry_vs_direct_product():
    rng = np.random.default_rng(3)
    terms = [(rng.uniform(-1, 1), rng.uniform(-1, 1, size=3)) for _ in range(3)]
    t = sym.RankOneSum(tuple(terms), 4).expand(3)
    for idx in itertools.combinations_with_replacement(range(1, 4), 4):
        assert t.entry(idx) == pytest.approx(rank_one_entry(terms, idx), abs=1e-12)


# -- apply ----------------------------------------------------------------------


def test_apply_worked_example_exact():
    assert hankel.dense(EX41).apply([1, 1, -1]) == -1.0


def test_apply_zero_vector():
    assert random_tensor(4, 3, 1).apply(np.zeros(3)) == 0.0


@pytest.mark.parametrize("seed", range(4))
def test_apply_matches_naive_sum(seed):
    t = random_tensor(4, 3, seed)
    rng = np.random.default_rng(100 + seed)
    x = rng.uniform(-1, 1, size=3)
    expect = naive_apply(t, x)
    assert t.apply(x) == pytest.approx(expect, rel=1e-10, abs=1e-12)


def test_apply_many_matches_apply():
    t = random_tensor(4, 4, 5)
    xs = np.random.default_rng(6).uniform(-1, 1, size=(10, 4))
    batched = t.apply_many(xs)
    for k in range(10):
        assert batched[k] == pytest.approx(t.apply(xs[k]), rel=1e-12)


def test_apply_dimension_mismatch():
    with pytest.raises(InputError):
        random_tensor(4, 3, 0).apply(np.ones(4))


# -- contract --------------------------------------------------------------------


def test_contract_worked_example():
    np.testing.assert_allclose(
        hankel.dense(EX41).contract([1.0, 0.0, 0.0]), [1.0, -1.0, 1.0]
    )


def test_contract_cauchy_entry_formula():
    c, d, m = (1.0, 2.0), (1.0, 3.0), 4
    spec = cauchy.build(c, d, m)
    t = cauchy.dense(spec)
    out = t.contract([1.0, 0.0])
    # component r+1 at e_1 is the entry d_{r+1} d_1^{m-1} / (c_{r+1} + (m-1) c_1)
    assert out[1] == pytest.approx(d[1] * d[0] ** 3 / (c[1] + 3 * c[0]), rel=1e-14)
    assert out[1] == pytest.approx(t.entry((2, 1, 1, 1)), rel=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_contract_euler_identity(seed):
    rng = np.random.default_rng(seed)
    t = random_tensor(4, 3, seed)
    x = rng.uniform(-1, 1, size=3)
    lhs = float(t.contract(x) @ x)
    assert lhs == pytest.approx(t.apply(x), rel=1e-10, abs=1e-12)


def test_contract_matches_naive():
    t = random_tensor(3, 3, 11)
    x = np.random.default_rng(12).uniform(-1, 1, size=3)
    np.testing.assert_allclose(t.contract(x), naive_contract(t, x), rtol=1e-10)


# -- hadamard ----------------------------------------------------------------------


def test_hadamard_identity():
    t = random_tensor(4, 3, 20)
    ones = sym.DenseSymmetricTensor(4, 3, np.ones(sym.num_canonical(4, 3)))
    assert t.hadamard(ones) == t


def test_hadamard_cauchy_square_entry():
    t = cauchy.dense(cauchy.build([1.0, 2.0], None, 2))
    sq = t.hadamard(t)
    assert sq.entry((1, 1)) == pytest.approx(0.25, abs=1e-15)


def test_hadamard_of_rank_one_sums_is_pairwise_product_sum():
    rng = np.random.default_rng(21)
    t1 = [(rng.uniform(0.5, 1.5), rng.uniform(-1, 1, size=3)) for _ in range(2)]
    t2 = [(rng.uniform(0.5, 1.5), rng.uniform(-1, 1, size=3)) for _ in range(2)]
    lhs = sym.RankOneSum(tuple(t1), 4).expand(3).hadamard(
        sym.RankOneSum(tuple(t2), 4).expand(3)
    )
    pairwise = [(w1 * w2, v1 * v2) for w1, v1 in t1 for w2, v2 in t2]
    rhs = sym.RankOneSum(tuple(pairwise), 4).expand(3)
    assert lhs.max_abs_diff(rhs) <= 1e-12


def test_hadamard_shape_mismatch():
    with pytest.raises(InputError):
        random_tensor(4, 3, 0).hadamard(random_tensor(4, 2, 0))


# -- rank-one assembly ----------------------------------------------------------------


def test_from_rank_one_coordinate_term():
    t = sym.RankOneSum(((1.0, np.eye(3)[0]),), 4).expand(3)
    assert t.entry((1, 1, 1, 1)) == 1.0
    assert np.count_nonzero(t.values) == 1


def test_from_rank_one_moment_vectors_give_hankel():
    terms = ((1.0, np.array([1.0, 0.0, 0.0])), (1.0, np.array([1.0, 1.0, 1.0])))
    t = sym.RankOneSum(terms, 4).expand(3)
    expect = hankel.dense(hankel.build([2, 1, 1, 1, 1, 1, 1, 1, 1], 4, 3))
    assert t.max_abs_diff(expect) <= 1e-12


def test_rank_one_roundtrip_direct_product():
    rng = np.random.default_rng(30)
    terms = [(rng.uniform(-2, 2), rng.uniform(-1, 1, size=4)) for _ in range(3)]
    t = sym.RankOneSum(tuple(terms), 3).expand(4)
    for idx in itertools.combinations_with_replacement(range(1, 5), 3):
        assert t.entry(idx) == pytest.approx(rank_one_entry(terms, idx), abs=1e-12)


def test_rank_one_zero_weight_rejected():
    with pytest.raises(InputError):
        sym.RankOneSum(((0.0, np.ones(2)),), 2)


# -- max_abs_diff ------------------------------------------------------------------------


def test_max_abs_diff_identical():
    t = random_tensor(4, 3, 40)
    assert t.max_abs_diff(t) == 0.0


def test_max_abs_diff_against_zero():
    z = sym.DenseSymmetricTensor.zeros(4, 3)
    assert hankel.dense(EX41).max_abs_diff(z) == 1.0


# -- copositivity probe ---------------------------------------------------------------------


def test_copositive_probe_catches_biased_midpoint_witness():
    t = hankel.dense(hankel.build([1, -1, 0.5, 0, 0, 0, 0, 0, 0], 4, 3))
    verdict = sym.copositive_probe(t, trials=10, seed=0)
    assert verdict.violated
    assert verdict.witness == (1.0, 0.5, 0.0)
    assert verdict.value == -0.25


def test_copositive_probe_nonnegative_tensor_clean():
    t = cauchy.dense(cauchy.build([1.0, 2.0, 3.0], None, 4))
    assert not sym.copositive_probe(t, trials=500, seed=0).violated


def test_copositive_probe_regression_seed0():
    # frozen regression: the order-4 tensor nonneg on moment vectors but
    # indefinite stays clean on the orthant for this fixed budget
    verdict = sym.copositive_probe(hankel.dense(EX41), trials=1000, seed=0)
    assert not verdict.violated
    assert verdict.probes_used == 1000 + len(sym.structured_orthant_probes(3))


def test_copositive_probe_deterministic():
    t = random_tensor(4, 3, 50)
    a = sym.copositive_probe(t, trials=200, seed=9)
    b = sym.copositive_probe(t, trials=200, seed=9)
    assert a == b


# -- serialization helpers --------------------------------------------------------------------


def test_nonzero_entries_roundtrip():
    t = random_tensor(4, 3, 60)
    rebuilt = sym.DenseSymmetricTensor.from_entries(4, 3, t.nonzero_entries())
    assert t.max_abs_diff(rebuilt) == 0.0


def test_values_buffer_immutable():
    t = random_tensor(2, 2, 70)
    with pytest.raises(ValueError):
        t.values[0] = 5.0
