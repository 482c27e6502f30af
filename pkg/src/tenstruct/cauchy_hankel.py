"""Cauchy-Hankel tensors: reciprocal-of-index-sum entries.

Two scalars ``(g, h)`` with ``h != 0`` determine the order-m dimension-n
tensor with entries

    a_{i_1..i_m} = 1 / (g + h (i_1 + i_2 + .. + i_m)),

which is simultaneously a Cauchy tensor (generating vector
``c_i = g/m + i h``, all-ones numerators) and a Hankel tensor (generating
vector ``v_k = 1/(g + h (k + m))``).  For even order the tensor is
positive definite exactly when both extreme denominators are positive:
``g + mh > 0`` and ``g + nmh > 0``; in that case the associated form is
strictly increasing on the nonnegative orthant, and conversely a failure
is already visible on the pairs ``(0, e_1)`` or ``(0, e_n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cauchy, hankel
from .errors import DegenerateGeneratorError, InputError, UnsupportedQueryError
from .symtensor import DenseSymmetricTensor, _rows_cached, check_shape

DEGENERACY_TOL = 1e-14
STRICTNESS_TOL = 1e-12


@dataclass(frozen=True)
class CauchyHankelSpec:
    g: float
    h: float
    order: int
    dim: int


def build(g: float, h: float, order: int, dim: int) -> CauchyHankelSpec:
    """Validated spec: every realized denominator ``g + h s`` for index
    sums ``s = m .. nm`` must be nonzero."""
    if order < 2 or dim < 2:
        raise InputError(f"need order >= 2 and dim >= 2, got ({order}, {dim})")
    check_shape(order, dim)
    g, h = float(g), float(h)
    if h == 0.0:
        raise InputError("h must be nonzero")
    scale = max(1.0, abs(g), abs(h) * dim * order)
    for s in range(order, dim * order + 1):
        if abs(g + h * s) <= DEGENERACY_TOL * scale:
            raise DegenerateGeneratorError(
                f"denominator g + h*s vanishes at index sum s = {s}"
            )
    return CauchyHankelSpec(g, h, order, dim)


def dense(spec: CauchyHankelSpec) -> DenseSymmetricTensor:
    rows = _rows_cached(spec.order, spec.dim)
    sums = rows.sum(axis=1) + spec.order  # rows are 0-based
    vals = 1.0 / (spec.g + spec.h * sums)
    return DenseSymmetricTensor(spec.order, spec.dim, vals)


def as_cauchy(spec: CauchyHankelSpec) -> cauchy.GeneralizedCauchySpec:
    """Equivalent Cauchy generators: ``c_i = g/m + i h``, ``d`` all ones."""
    c = [spec.g / spec.order + i * spec.h for i in range(1, spec.dim + 1)]
    return cauchy.build(c, None, spec.order)


def as_hankel(spec: CauchyHankelSpec) -> hankel.HankelSpec:
    """Equivalent Hankel generating vector ``v_k = 1/(g + h (k + m))``."""
    length = hankel.generating_length(spec.order, spec.dim)
    v = [1.0 / (spec.g + spec.h * (k + spec.order)) for k in range(length)]
    return hankel.build(v, spec.order, spec.dim)


def is_pd(spec: CauchyHankelSpec) -> bool:
    """Positive definiteness of the even-order tensor from the two extreme
    denominators: ``g + mh > 0`` and ``g + nmh > 0``."""
    if spec.order % 2 != 0:
        raise UnsupportedQueryError(
            f"positive definiteness is defined for even order only, got {spec.order}"
        )
    m, n = spec.order, spec.dim
    return spec.g + m * spec.h > 0.0 and spec.g + n * m * spec.h > 0.0


@dataclass(frozen=True)
class MonotoneVerdict:
    violated: bool
    x: tuple | None
    y: tuple | None
    fx: float | None
    fy: float | None


def monotone_pairs(dim: int, pairs: int, seed: int):
    """Deterministic comparable pairs ``y <= x, y != x`` on the orthant.

    The boundary pairs ``(0, e_i)`` come first (they alone decide the
    reverse direction), then seeded pairs: a random nonnegative ``y`` with
    either a single-coordinate bump or a strictly positive full bump.
    Generated gaps are bounded away from zero, so the pair never collapses
    to ``x == y``.
    """
    if pairs < 1:
        raise InputError(f"pairs must be >= 1, got {pairs}")
    eye = np.eye(dim)
    ys = [np.zeros(dim) for _ in range(dim)]
    xs = [eye[i].copy() for i in range(dim)]
    rng = np.random.Generator(np.random.Philox(key=seed))
    y_rand = rng.uniform(0.0, 2.0, size=(pairs, dim))
    bump_scalar = rng.uniform(0.25, 1.25, size=pairs)
    bump_full = rng.uniform(0.1, 0.6, size=(pairs, dim))
    for t in range(pairs):
        y = y_rand[t]
        if t % 2 == 0:
            x = y.copy()
            x[t % dim] += bump_scalar[t]
        else:
            x = y + bump_full[t]
        ys.append(y)
        xs.append(x)
    return np.array(ys), np.array(xs)


def check_strict_monotone_on_orthant(
    spec: CauchyHankelSpec, pairs: int, seed: int, tol: float = STRICTNESS_TOL
) -> MonotoneVerdict:
    """Search for comparable orthant pairs with ``f(x) <= f(y) + tol``
    (a strict-monotonicity violation of the associated form).  Sampling
    can only falsify; a clean run is a consistency check, with the
    certificate delegated to :func:`is_pd`."""
    if spec.order % 2 != 0:
        raise UnsupportedQueryError(
            f"monotonicity check is defined for even order only, got {spec.order}"
        )
    t = dense(spec)
    ys, xs = monotone_pairs(spec.dim, pairs, seed)
    fy = t.apply_many(ys)
    fx = t.apply_many(xs)
    bad = np.nonzero(fx <= fy + tol)[0]
    if bad.size:
        k = int(bad[0])
        return MonotoneVerdict(
            True,
            tuple(float(c) for c in xs[k]),
            tuple(float(c) for c in ys[k]),
            float(fx[k]),
            float(fy[k]),
        )
    return MonotoneVerdict(False, None, None, None, None)
