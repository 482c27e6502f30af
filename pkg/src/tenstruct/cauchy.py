"""Generalized Cauchy tensors.

A pair of generating vectors ``(c, d)`` of length ``n`` and an order ``m``
determine the symmetric tensor with entries

    a_{i_1..i_m} = d_{i_1} d_{i_2} .. d_{i_m} / (c_{i_1} + c_{i_2} + .. + c_{i_m}).

With ``d`` all ones this is the plain Cauchy tensor generated by ``c``.
Positive semi-definiteness, positive definiteness and complete positivity
of the even-order tensor are decidable from the signs of the generators
alone; the module also builds the explicit rank-one approximation obtained
by a right-endpoint Riemann sum of

    a_{i_1..i_m} = integral_0^1 t^{c_{i_1}+..+c_{i_m}-1} dt * d_{i_1}..d_{i_m},

whose level-k vectors are ``u^j_i = (j/k)^{c_i - 1/m} d_i / k^{1/m}``.
When ``c > 0`` and ``d > 0`` every ``u^j`` is componentwise nonnegative,
which exhibits the tensor as a sum of nonnegative rank-one powers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeneratorError, InputError, UnsupportedQueryError
from .symtensor import DenseSymmetricTensor, RankOneSum, _rows_cached, check_shape

DEGENERACY_TOL = 1e-14


@dataclass(frozen=True)
class GeneralizedCauchySpec:
    c: tuple[float, ...]
    d: tuple[float, ...]
    order: int

    @property
    def dim(self) -> int:
        return len(self.c)

    def c_array(self) -> np.ndarray:
        return np.asarray(self.c, dtype=np.float64)

    def d_array(self) -> np.ndarray:
        return np.asarray(self.d, dtype=np.float64)


def build(c, d=None, order: int = 2) -> GeneralizedCauchySpec:
    """Validated spec; ``d`` defaults to all ones (plain Cauchy tensor).

    Every canonical m-index sum of ``c`` must be nonzero, otherwise some
    entry is undefined and the offending multi-index is reported.
    """
    cv = np.asarray(c, dtype=np.float64)
    if cv.ndim != 1 or cv.size < 1:
        raise InputError("generator c must be a nonempty vector")
    n = cv.size
    dv = np.ones(n) if d is None else np.asarray(d, dtype=np.float64)
    if dv.shape != (n,):
        raise InputError(f"generators must have equal length, got {n} and {dv.size}")
    check_shape(order, n)
    rows = _rows_cached(order, n)
    sums = cv[rows].sum(axis=1)
    bad = np.nonzero(np.abs(sums) <= DEGENERACY_TOL)[0]
    if bad.size:
        idx = tuple(int(i) + 1 for i in rows[bad[0]])
        raise DegenerateGeneratorError(
            f"denominator c_{{i_1}}+..+c_{{i_m}} vanishes at multi-index {idx}"
        )
    return GeneralizedCauchySpec(tuple(map(float, cv)), tuple(map(float, dv)), order)


def dense(spec: GeneralizedCauchySpec) -> DenseSymmetricTensor:
    rows = _rows_cached(spec.order, spec.dim)
    cv, dv = spec.c_array(), spec.d_array()
    vals = np.prod(dv[rows], axis=1) / cv[rows].sum(axis=1)
    return DenseSymmetricTensor(spec.order, spec.dim, vals)


def _require_even(spec: GeneralizedCauchySpec, what: str) -> None:
    if spec.order % 2 != 0:
        raise UnsupportedQueryError(
            f"{what} is defined for even order only, got order {spec.order}"
        )


def is_psd(spec: GeneralizedCauchySpec) -> bool:
    """Positive semi-definiteness from generator signs: every slice must
    either be dead (``d_i == 0`` with ``c_i != 0``) or have ``c_i > 0``."""
    _require_even(spec, "positive semi-definiteness")
    return all(
        (di == 0.0 and ci != 0.0) or (di != 0.0 and ci > 0.0)
        for ci, di in zip(spec.c, spec.d)
    )


def is_pd(spec: GeneralizedCauchySpec) -> bool:
    """Positive definiteness: ``c`` positive with pairwise distinct entries
    and no zero ``d`` entry.  Distinctness is exact; nearly equal ``c``
    values still give a (badly conditioned) positive definite tensor."""
    _require_even(spec, "positive definiteness")
    if any(ci <= 0.0 for ci in spec.c) or any(di == 0.0 for di in spec.d):
        return False
    sc = sorted(spec.c)
    return all(a != b for a, b in zip(sc, sc[1:]))


def is_completely_positive(spec: GeneralizedCauchySpec) -> bool:
    """Whether the generators certify a decomposition into nonnegative
    rank-one powers: ``c > 0`` and ``d > 0``.  Zero ``d`` entries are
    refused (the criterion assumes none)."""
    if any(di == 0.0 for di in spec.d):
        raise UnsupportedQueryError(
            "complete-positivity criterion assumes all d entries nonzero"
        )
    return all(ci > 0.0 for ci in spec.c) and all(di > 0.0 for di in spec.d)


def riemann_rank_one_approx(spec: GeneralizedCauchySpec, k: int) -> RankOneSum:
    """Level-k right-endpoint rank-one approximation.

    Requires ``c > 0`` so that ``t^{c_i - 1/m}`` is integrable on (0, 1].
    The expansion converges to the dense tensor as ``k`` grows.
    """
    if k < 1:
        raise InputError(f"approximation level k must be >= 1, got {k}")
    if any(ci <= 0.0 for ci in spec.c):
        raise UnsupportedQueryError(
            "rank-one Riemann construction requires c > 0 componentwise"
        )
    m = spec.order
    cv, dv = spec.c_array(), spec.d_array()
    scale = k ** (1.0 / m)
    terms = []
    for j in range(1, k + 1):
        u = (j / k) ** (cv - 1.0 / m) * dv / scale
        terms.append((1.0, u))
    return RankOneSum(tuple(terms), m)


def psd_violation_witness(spec: GeneralizedCauchySpec):
    """Coordinate witness for a failed sign criterion: the first ``e_i``
    with ``d_i != 0`` and ``c_i <= 0`` gives ``apply(e_i) = d_i^m/(m c_i) < 0``
    for even order.  Returns ``(i, value)`` 1-based, or ``None``."""
    m = spec.order
    for i, (ci, di) in enumerate(zip(spec.c, spec.d)):
        if di != 0.0 and ci <= 0.0:
            return i + 1, float(di**m / (m * ci))
    return None
