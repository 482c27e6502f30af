"""Eigenpair computation and definiteness probing for symmetric tensors.

Two eigenpair notions are supported.  An H-eigenpair solves
``contract(T, x) = lambda * x^{[m-1]}`` (componentwise power); a Z-eigenpair
solves ``contract(T, x) = lambda * x`` with ``||x||_2 = 1``.

Solvers:

* ``h_eigen_nqz`` - power iteration for the dominant H-eigenvalue of a
  tensor with nonnegative entries, with min/max ratio bounds bracketing
  the eigenvalue;
* ``h_eigen_all_dim2`` - exhaustive H-eigen enumeration in dimension 2 by
  reducing the eigen equations on ``x = (1, t)`` to a single univariate
  polynomial (the only component claiming completeness);
* ``z_eigen_sshopm`` - multi-start shifted symmetric power iteration,
  run on the tensor and its negation to approach extreme Z-eigenvalues;
* ``psd_probe`` - layered falsification search for ``apply(x) < 0``:
  coordinate vectors, all sign patterns (dimension <= 12), seeded unit
  sphere samples, then the most negative direction the Z-solver can find.

Everything for dimension >= 3 reports eigenpairs *found*, never *all*.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import unipoly
from .errors import ConvergenceError, InputError, UnsupportedQueryError
from .symtensor import DenseSymmetricTensor

DEDUP_LAMBDA_TOL = 1e-6
DEDUP_VECTOR_TOL = 1e-4
PSD_PROBE_TOL = 1e-10


@dataclass(frozen=True)
class EigenPair:
    """``kind == "H"``: x scaled to unit max-norm, residual is the max-norm
    of ``contract(x) - lambda x^{[m-1]}``.  ``kind == "Z"``: ``||x||_2 = 1``
    and residual is the max-norm of ``contract(x) - lambda x``."""

    value: float
    x: tuple
    kind: str
    residual: float


def _as_tensor_vector(x) -> np.ndarray:
    return np.asarray(x, dtype=np.float64)


def h_residual(t: DenseSymmetricTensor, lam: float, x: np.ndarray) -> float:
    pw = np.power(x, t.order - 1)
    return float(np.max(np.abs(t.contract(x) - lam * pw)))


def z_residual(t: DenseSymmetricTensor, lam: float, x: np.ndarray) -> float:
    return float(np.max(np.abs(t.contract(x) - lam * x)))


# -- dominant H-eigenpair of a nonnegative tensor ------------------------------


def h_eigen_nqz(
    t: DenseSymmetricTensor, tol: float = 1e-10, max_iters: int = 1000
) -> EigenPair:
    """Power iteration ``x <- normalize(contract(x)^{[1/(m-1)]})`` from the
    uniform positive vector; the min/max ratios ``contract(x)_i / x_i^{m-1}``
    bracket the dominant H-eigenvalue and the iteration stops once the
    bracket is within ``tol``.  The returned value is always >= 0.

    Requires all entries nonnegative and a nonzero tensor; raises
    :class:`ConvergenceError` (carrying the final bracket) on a stall.
    """
    if np.any(t.values < 0.0):
        raise UnsupportedQueryError("power iteration requires nonnegative entries")
    if not np.any(t.values):
        raise InputError("power iteration is undefined for the zero tensor")
    m, n = t.order, t.dim
    x = np.full(n, 1.0 / n)
    lo, hi = 0.0, math.inf
    for _ in range(max_iters):
        y = t.contract(x)
        pos = x > 0.0
        ratios = y[pos] / x[pos] ** (m - 1)
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= tol:
            lam = 0.5 * (lo + hi)
            xhat = x / np.max(np.abs(x))
            return EigenPair(
                lam, tuple(map(float, xhat)), "H", h_residual(t, lam, xhat)
            )
        z = np.power(y, 1.0 / (m - 1))
        peak = np.max(z)
        if peak == 0.0:  # contraction collapsed: x is a 0-eigenvector
            xhat = x / np.max(np.abs(x))
            return EigenPair(0.0, tuple(map(float, xhat)), "H", h_residual(t, 0.0, xhat))
        x = z / peak
    raise ConvergenceError(
        f"bracket [{lo}, {hi}] still wider than {tol} after {max_iters} iterations",
        bracket=(lo, hi),
    )


# -- exhaustive dimension-2 H-eigen oracle -------------------------------------


def _dim2_contract_polys(t: DenseSymmetricTensor):
    # contract(T, (1, t))_i as a polynomial in t:
    # sum_j C(m-1, j) * entry(i, 1^{m-1-j} 2^j) * t^j
    m = t.order
    polys = []
    for i in (1, 2):
        coeffs = []
        for j in range(m):
            idx = (i,) + (1,) * (m - 1 - j) + (2,) * j
            coeffs.append(math.comb(m - 1, j) * t.entry(idx))
        polys.append(coeffs)
    return polys


def h_eigen_all_dim2(t: DenseSymmetricTensor) -> list[EigenPair]:
    """All H-eigenpairs of a dimension-2 tensor.

    Eigenvectors with a nonzero first component scale to ``x = (1, s)``;
    eliminating lambda from the two eigen equations leaves one univariate
    polynomial whose real roots enumerate them, and ``x = (0, 1)`` is
    checked directly.  Pairs are kept when the defining residual is at
    most 1e-8.  If the eliminant vanishes identically (isotropic diagonal
    case: a continuum of eigenvectors), the coordinate pairs are returned
    as representatives.
    """
    if t.dim != 2:
        raise UnsupportedQueryError(f"exhaustive oracle is dimension-2 only, got {t.dim}")
    m = t.order
    p1, p2 = _dim2_contract_polys(t)
    # r(s) = p2(s) - s^{m-1} p1(s)
    r = [0.0] * (2 * (m - 1) + 1)
    for j, c in enumerate(p2):
        r[j] += c
    for j, c in enumerate(p1):
        r[j + m - 1] -= c
    rpoly = unipoly.poly(r)
    pairs: list[EigenPair] = []

    def push(lam: float, xraw: np.ndarray):
        xhat = xraw / np.max(np.abs(xraw))
        res = h_residual(t, lam, xhat)
        if res <= 1e-8:
            pairs.append(EigenPair(float(lam), tuple(map(float, xhat)), "H", res))

    if rpoly.degree < 0:
        push(t.entry((1,) * m), np.array([1.0, 0.0]))
    else:
        p1poly = unipoly.poly(p1)
        for root, _ in unipoly.real_roots(rpoly):
            push(unipoly.eval_poly(p1poly, root), np.array([1.0, root]))
    # the (0, 1) direction: needs entry(1, 2..2) = 0; the residual filter
    # enforces exactly that
    push(t.entry((2,) * m), np.array([0.0, 1.0]))
    return _dedup_sorted(pairs)


def _dedup_sorted(pairs: list[EigenPair]) -> list[EigenPair]:
    out: list[EigenPair] = []
    for p in sorted(pairs, key=lambda p: (-p.value, p.x)):
        dup = False
        for q in out:
            if abs(p.value - q.value) <= DEDUP_LAMBDA_TOL:
                px, qx = np.asarray(p.x), np.asarray(q.x)
                if min(
                    float(np.max(np.abs(px - qx))), float(np.max(np.abs(px + qx)))
                ) <= DEDUP_VECTOR_TOL:
                    dup = True
                    break
        if not dup:
            out.append(p)
    return out


# -- shifted symmetric power iteration for Z-eigenpairs ------------------------


def default_shift(t: DenseSymmetricTensor) -> float:
    """Crude convexification bound: 1 + the multiplicity-weighted entry
    1-norm (an upper bound on the spectral radius of the form)."""
    return 1.0 + float(np.sum(t.multiplicities() * np.abs(t.values)))


def _sshopm_starts(t: DenseSymmetricTensor, starts: int, seed: int) -> list[np.ndarray]:
    n = t.dim
    cands = [np.eye(n)[i] for i in range(n)]
    cands.append(np.full(n, 1.0 / math.sqrt(n)))
    if n <= 6:
        for signs in itertools.product((1.0, -1.0), repeat=n - 1):
            v = np.array((1.0,) + signs) / math.sqrt(n)
            cands.append(v)
    rng = np.random.Generator(np.random.Philox(key=seed))
    while len(cands) < starts:
        v = rng.standard_normal(n)
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            cands.append(v / norm)
    return cands


def z_eigen_sshopm(
    t: DenseSymmetricTensor,
    shift: float | None = None,
    tol: float = 1e-8,
    max_iters: int = 5000,
    starts: int = 8,
    seed: int = 0,
) -> list[EigenPair]:
    """Multi-start shifted fixed-point iteration
    ``x <- normalize(contract(x) + shift * x)``, run on the tensor and its
    negation so both ends of the Z-spectrum are approached.  A start
    counts as converged when the defining residual drops to ``tol``;
    converged pairs are deduplicated and sorted by eigenvalue descending.
    Raises :class:`ConvergenceError` only if every start fails.
    """
    if starts < 1:
        raise InputError(f"starts must be >= 1, got {starts}")
    alpha = default_shift(t) if shift is None else float(shift)
    pairs: list[EigenPair] = []
    for x0 in _sshopm_starts(t, starts, seed):
        for sign in (1.0, -1.0):
            x = x0.copy()
            for _ in range(max_iters):
                y = t.contract(x)
                lam = float(x @ y)
                if np.max(np.abs(y - lam * x)) <= tol:
                    pairs.append(
                        EigenPair(lam, tuple(map(float, x)), "Z", z_residual(t, lam, x))
                    )
                    break
                z = sign * y + alpha * x
                norm = np.linalg.norm(z)
                if norm <= 1e-300:
                    break
                x = z / norm
    if not pairs:
        raise ConvergenceError(
            f"no start converged to residual {tol} within {max_iters} iterations"
        )
    return _dedup_sorted(pairs)


def minimization_directions(
    t: DenseSymmetricTensor, starts: int = 4, iters: int = 400, seed: int = 0
) -> np.ndarray:
    """Final iterates of short negated shifted runs: candidate directions
    for the most negative value of the form, converged or not."""
    alpha = default_shift(t)
    out = []
    for x0 in _sshopm_starts(t, starts, seed)[: max(starts, t.dim + 1)]:
        x = x0.copy()
        for _ in range(iters):
            z = -t.contract(x) + alpha * x
            norm = np.linalg.norm(z)
            if norm <= 1e-300:
                break
            x = z / norm
        out.append(x)
    return np.array(out)


# -- sampling PSD probe --------------------------------------------------------


def sign_vectors(dim: int) -> np.ndarray:
    """All ``2^{n-1}`` sign patterns with first component +1 (global sign
    is irrelevant for even-order forms)."""
    rows = [
        (1.0,) + signs for signs in itertools.product((1.0, -1.0), repeat=dim - 1)
    ]
    return np.array(rows)


@dataclass(frozen=True)
class PsdProbeVerdict:
    violated: bool
    witness: tuple | None
    value: float | None
    stage: str | None


def psd_probe(
    t: DenseSymmetricTensor, trials: int, seed: int, tol: float = PSD_PROBE_TOL
) -> PsdProbeVerdict:
    """Layered search for ``apply(x) < -tol``.

    Stages: (1) ``+-e_i``; (2) every sign vector when dim <= 12, so any
    tensor negative at a sign pattern is always caught; (3) ``trials``
    seeded unit-sphere samples; (4) the most negative direction located by
    short negated power-iteration runs.  Returns the first witness found;
    a clean pass is evidence, not a certificate.  Even order only.
    """
    if t.order % 2 != 0:
        raise UnsupportedQueryError(
            f"PSD probing is defined for even order only, got {t.order}"
        )
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    n = t.dim
    eye = np.eye(n)
    stages = [("coordinate", np.vstack([eye, -eye]))]
    if n <= 12:
        stages.append(("sign-pattern", sign_vectors(n)))
    rng = np.random.Generator(np.random.Philox(key=seed))
    samples = rng.standard_normal((trials, n))
    samples /= np.linalg.norm(samples, axis=1, keepdims=True)
    stages.append(("sphere-sample", samples))
    for name, batch in stages:
        vals = t.apply_many(batch)
        neg = np.nonzero(vals < -tol)[0]
        if neg.size:
            k = int(neg[0])
            return PsdProbeVerdict(
                True, tuple(float(c) for c in batch[k]), float(vals[k]), name
            )
    dirs = minimization_directions(t, seed=seed)
    vals = t.apply_many(dirs)
    k = int(np.argmin(vals))
    if vals[k] < -tol:
        return PsdProbeVerdict(
            True, tuple(float(c) for c in dirs[k]), float(vals[k]), "power-direction"
        )
    return PsdProbeVerdict(False, None, None, None)
