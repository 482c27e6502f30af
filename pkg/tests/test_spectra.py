"""Eigen solvers and definiteness probes."""

import numpy as np
import pytest

from tenstruct import cauchy, cauchy_hankel, hankel, spectra, symtensor
from tenstruct.errors import InputError, UnsupportedQueryError

from helpers import sym2x2_eigvals

EX41_T = hankel.dense(hankel.build([1, -1, 1, 0, 0, 0, 0, 0, 0], 4, 3))


def matrix_tensor(a, b, c):
    return symtensor.DenseSymmetricTensor.from_entries(
        2, 2, [((1, 1), a), ((1, 2), b), ((2, 2), c)]
    )


# -- dominant H-eigenpair (nonnegative power iteration) -------------------------


def test_nqz_uniform_tensor():
    t = symtensor.DenseSymmetricTensor(4, 3, np.ones(symtensor.num_canonical(4, 3)))
    pair = spectra.h_eigen_nqz(t)
    assert pair.value == pytest.approx(27.0, abs=1e-9)
    assert max(pair.x) == 1.0
    assert pair.residual <= 1e-8


def test_nqz_matches_matrix_eigenvalue():
    t = cauchy.dense(cauchy.build([1, 2], None, 2))
    _, hi = sym2x2_eigvals(t.entry((1, 1)), t.entry((1, 2)), t.entry((2, 2)))
    pair = spectra.h_eigen_nqz(t)
    assert pair.value == pytest.approx(hi, abs=1e-8)


def test_nqz_odd_order_cauchy_nonnegative():
    pair = spectra.h_eigen_nqz(cauchy.dense(cauchy.build([1, 2, 3], None, 3)))
    assert pair.value >= 0.0
    assert pair.residual <= 1e-8


def test_nqz_guards():
    with pytest.raises(UnsupportedQueryError):
        spectra.h_eigen_nqz(EX41_T)  # has negative entries
    with pytest.raises(InputError):
        spectra.h_eigen_nqz(symtensor.DenseSymmetricTensor.zeros(4, 3))


# -- exhaustive dimension-2 H-eigen oracle -----------------------------------------


@pytest.mark.parametrize("order", [2, 3, 4])
def test_dim2_diagonal_tensor(order):
    t = symtensor.DenseSymmetricTensor.from_entries(
        order, 2, [((1,) * order, 3.0), ((2,) * order, -2.0)]
    )
    pairs = spectra.h_eigen_all_dim2(t)
    assert len(pairs) == 2
    assert pairs[0].value == pytest.approx(3.0)
    assert pairs[0].x == (1.0, 0.0)
    assert pairs[1].value == pytest.approx(-2.0)
    assert pairs[1].x == (0.0, 1.0)


def test_dim2_matrix_agrees_with_closed_form():
    rng = np.random.default_rng(7)
    for _ in range(100):
        a, b, c = rng.uniform(-3, 3, size=3)
        pairs = spectra.h_eigen_all_dim2(matrix_tensor(a, b, c))
        got = sorted(p.value for p in pairs)
        want = sorted(sym2x2_eigvals(a, b, c))
        assert len(got) == 2
        for g, w in zip(got, want):
            assert g == pytest.approx(w, abs=1e-8)


def test_dim2_residual_contract():
    t = cauchy.dense(cauchy.build([1, 2], None, 4))
    for p in spectra.h_eigen_all_dim2(t):
        x = np.asarray(p.x)
        res = float(np.max(np.abs(t.contract(x) - p.value * x**3)))
        assert res == pytest.approx(p.residual, abs=1e-12)
        assert p.value >= -1e-10  # nonnegative generator: eigenvalues nonnegative


def test_dim2_guard():
    with pytest.raises(UnsupportedQueryError):
        spectra.h_eigen_all_dim2(EX41_T)


# -- Z-eigen solver ------------------------------------------------------------------


def isotropic_quartic_dim2():
    # apply(x) = (x1^2 + x2^2)^2: entries a_1111 = a_2222 = 1, a_1122 = 1/3
    return symtensor.DenseSymmetricTensor.from_entries(
        4, 2, [((1, 1, 1, 1), 1.0), ((1, 1, 2, 2), 1 / 3), ((2, 2, 2, 2), 1.0)]
    )


def test_sshopm_isotropic_tensor_unit_eigenvalues():
    pairs = spectra.z_eigen_sshopm(isotropic_quartic_dim2(), seed=0)
    for p in pairs:
        assert p.value == pytest.approx(1.0, abs=1e-7)
        assert np.linalg.norm(p.x) == pytest.approx(1.0, abs=1e-9)


def test_sshopm_finds_negative_direction_for_indefinite_tensor():
    pairs = spectra.z_eigen_sshopm(EX41_T, seed=0)
    assert min(p.value for p in pairs) <= -1 / 9 + 1e-9


def test_sshopm_pd_spec_all_positive():
    t = cauchy_hankel.dense(cauchy_hankel.build(1, 1, 4, 3))
    pairs = spectra.z_eigen_sshopm(t, seed=0)
    assert pairs and all(p.value > 0 for p in pairs)


def test_sshopm_residual_contract():
    for p in spectra.z_eigen_sshopm(EX41_T, seed=0):
        x = np.asarray(p.x)
        res = float(np.max(np.abs(EX41_T.contract(x) - p.value * x)))
        assert res == pytest.approx(p.residual, abs=1e-12)
        assert res <= 1e-8


def test_sshopm_deterministic():
    a = spectra.z_eigen_sshopm(EX41_T, seed=3)
    b = spectra.z_eigen_sshopm(EX41_T, seed=3)
    assert a == b


# -- PSD probe -------------------------------------------------------------------------


def test_sign_vectors_complete():
    vs = spectra.sign_vectors(4)
    assert vs.shape == (8, 4)
    assert len({tuple(v) for v in vs}) == 8
    assert np.all(vs[:, 0] == 1.0)


def test_psd_probe_worked_example_witness():
    verdict = spectra.psd_probe(EX41_T, trials=100, seed=0)
    assert verdict.violated
    assert verdict.witness == (1.0, 1.0, -1.0)
    assert verdict.value == -1.0
    assert verdict.stage == "sign-pattern"


def test_psd_probe_psd_cauchy_clean():
    t = cauchy.dense(cauchy.build([1, 2, 3], None, 4))
    assert not spectra.psd_probe(t, trials=5000, seed=0).violated


def test_psd_probe_zero_tensor_clean():
    assert not spectra.psd_probe(
        symtensor.DenseSymmetricTensor.zeros(4, 3), trials=100, seed=0
    ).violated


def test_psd_probe_catches_sign_pattern_negativity():
    # negative exactly on the sign pattern (1, 1, -1, 1) direction
    u = np.array([1.0, 1.0, -1.0, 1.0])
    t = symtensor.RankOneSum(((-1.0, u),), 4).expand(4)
    verdict = spectra.psd_probe(t, trials=1, seed=0)
    assert verdict.violated and verdict.stage in ("coordinate", "sign-pattern")


def test_psd_probe_even_order_only():
    with pytest.raises(UnsupportedQueryError):
        spectra.psd_probe(cauchy.dense(cauchy.build([1, 2], None, 3)), 10, 0)
