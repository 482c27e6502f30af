"""Hankel tensors, their dimension-2 plane form, and Vandermonde machinery.

A generating vector ``v`` of length ``(n-1)m + 1`` determines the order-m
dimension-n Hankel tensor with entries depending only on the index sum:

    a_{i_1..i_m} = v_{i_1+..+i_m - m}.

``s_count(k, m, n)`` counts the index tuples realizing slot ``k``; the
weighted coefficients ``b_k = s(k,m,n) v_k`` form a binary form of degree
``(n-1)m`` (the plane form) whose restriction ``q(mu) = sum b_k mu^k``
equals the tensor applied to the moment vector ``u = (1, mu, .., mu^{n-1})``.
Nonnegativity of ``q`` on the reals is therefore exactly positive
semi-definiteness restricted to moment vectors, and it coincides with
positive semi-definiteness of the associated dimension-2 plane tensor
with entries ``b_k / C((n-1)m, k)``.

A Vandermonde decomposition writes the tensor as ``sum_k alpha_k u_k^{x m}``
over distinct real nodes; composing is a moment sum ``v_j = sum alpha_k
mu_k^j`` and minimal decomposition is node recovery from the moment
sequence via a linear recurrence (Prony).  When the number of terms does
not exceed the dimension, the tensor is positive semi-definite exactly
when all coefficients are positive, and a failed sign condition yields a
constructive negative witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import unipoly
from .errors import InputError, NoRealMinimalDecomposition, UnsupportedQueryError
from .symtensor import DenseSymmetricTensor, _rows_cached, check_shape

PRONY_RESIDUAL_TOL = 1e-10
RECOMPOSE_RESIDUAL_TOL = 1e-8
ALPHA_DROP_TOL = 1e-12


@dataclass(frozen=True)
class HankelSpec:
    v: tuple
    order: int
    dim: int

    def v_array(self) -> np.ndarray:
        return np.asarray(self.v, dtype=np.float64)


def generating_length(order: int, dim: int) -> int:
    return (dim - 1) * order + 1


def build(v, order: int, dim: int) -> HankelSpec:
    """Validated spec.  ``v`` may hold ints or Fractions; exact values are
    preserved for the exact plane-entry path."""
    if order < 2 or dim < 2:
        raise InputError(f"need order >= 2 and dim >= 2, got ({order}, {dim})")
    check_shape(order, dim)
    vv = tuple(v)
    expected = generating_length(order, dim)
    if len(vv) != expected:
        raise InputError(
            f"generating vector must have length {expected} for order {order} "
            f"dim {dim}, got {len(vv)}"
        )
    for x in vv:
        float(x)  # reject non-numeric early
    return HankelSpec(vv, order, dim)


def dense(spec: HankelSpec) -> DenseSymmetricTensor:
    rows = _rows_cached(spec.order, spec.dim)
    vals = spec.v_array()[rows.sum(axis=1)]
    return DenseSymmetricTensor(spec.order, spec.dim, vals)


# -- index-sum combinatorics -------------------------------------------------


@lru_cache(maxsize=128)
def _s_table(order: int, dim: int) -> tuple[int, ...]:
    # counts[k] = #{(i_1..i_m) in [n]^m : sum (i_j - 1) = k}, exact ints
    counts = [1]
    for _ in range(order):
        nxt = [0] * (len(counts) + dim - 1)
        for k, c in enumerate(counts):
            for step in range(dim):
                nxt[k + step] += c
        counts = nxt
    return tuple(counts)


def s_count(k: int, order: int, dim: int) -> int:
    """Number of index tuples with shifted sum ``k``; 0 <= k <= (n-1)m."""
    if order < 2 or dim < 1:
        raise InputError(f"need order >= 2 and dim >= 1, got ({order}, {dim})")
    top = (dim - 1) * order
    if not (0 <= k <= top):
        raise InputError(f"slot {k} out of range 0..{top}")
    return _s_table(order, dim)[k]


# -- plane form ---------------------------------------------------------------


@dataclass(frozen=True)
class PlaneForm:
    """Degree-``(n-1)m`` binary form attached to a Hankel tensor.

    ``coeffs[k] = s(k,m,n) * v_k`` are the binary-form coefficients;
    ``entries[k] = coeffs[k] / C(degree, k)`` are the canonical entries of
    the dimension-2 plane tensor.  ``entries_exact`` carries Fractions when
    the generating vector was rational-valued.
    """

    degree: int
    coeffs: tuple[float, ...]
    entries: tuple[float, ...]
    entries_exact: tuple | None

    def poly(self) -> unipoly.UnivariatePoly:
        """Restriction ``q(mu) = sum_k coeffs[k] mu^k``."""
        return unipoly.poly(self.coeffs)

    def eval_binary(self, y1: float, y2: float) -> float:
        """Value of the binary form ``sum_k coeffs[k] y1^{d-k} y2^k``."""
        return float(
            sum(c * y1 ** (self.degree - k) * y2**k for k, c in enumerate(self.coeffs))
        )


def plane_form(spec: HankelSpec) -> PlaneForm:
    deg = generating_length(spec.order, spec.dim) - 1
    table = _s_table(spec.order, spec.dim)
    coeffs = tuple(float(s * float(vk)) for s, vk in zip(table, spec.v))
    entries = tuple(c / math.comb(deg, k) for k, c in enumerate(coeffs))
    exact = None
    if all(isinstance(vk, (int, Fraction)) for vk in spec.v):
        exact = tuple(
            Fraction(s * vk, math.comb(deg, k))
            for k, (s, vk) in enumerate(zip(table, spec.v))
        )
    return PlaneForm(deg, coeffs, entries, exact)


@dataclass(frozen=True)
class VandermondeVerdict:
    """``vpsd`` verdict with the minimum of ``q`` (location, value); on
    violation ``mu``/``value`` witness ``A u^m < 0`` at the moment vector
    of ``mu``."""

    vpsd: bool
    mu: float
    value: float


def is_vandermonde_psd(spec: HankelSpec) -> VandermondeVerdict:
    """Decide nonnegativity of the tensor on moment vectors (equivalently,
    positive semi-definiteness of the plane tensor).  Even order only."""
    if spec.order % 2 != 0:
        raise UnsupportedQueryError(
            f"query is defined for even order only, got {spec.order}"
        )
    verdict = unipoly.nonneg_on_reals(plane_form(spec).poly())
    return VandermondeVerdict(verdict.nonnegative, verdict.mu, verdict.value)


def moment_vector(mu: float, dim: int) -> np.ndarray:
    """``(1, mu, mu^2, .., mu^{n-1})``."""
    return np.power(float(mu), np.arange(dim, dtype=np.float64))


# -- Vandermonde decompositions ----------------------------------------------


@dataclass(frozen=True)
class VandermondeDecomposition:
    """``sum_k alpha_k u(mu_k)^{x m}`` with nonzero coefficients and
    pairwise distinct real nodes; ``rank`` is the term count."""

    terms: tuple[tuple[float, float], ...]  # (alpha_k, mu_k)
    dim: int

    def __post_init__(self):
        terms = tuple((float(a), float(mu)) for a, mu in self.terms)
        object.__setattr__(self, "terms", terms)
        if any(a == 0.0 for a, _ in terms):
            raise InputError("zero coefficient in Vandermonde decomposition")
        nodes = [mu for _, mu in terms]
        if len(set(nodes)) != len(nodes):
            raise InputError("duplicate nodes in Vandermonde decomposition")
        if self.dim < 2:
            raise InputError(f"dim must be >= 2, got {self.dim}")

    @property
    def rank(self) -> int:
        return len(self.terms)

    def alphas(self) -> np.ndarray:
        return np.array([a for a, _ in self.terms])

    def nodes(self) -> np.ndarray:
        return np.array([mu for _, mu in self.terms])

    def node_matrix(self) -> np.ndarray:
        """(rank, dim) matrix with row k the moment vector of node k."""
        return np.array([moment_vector(mu, self.dim) for _, mu in self.terms])


def vandermonde_compose(dec: VandermondeDecomposition, order: int) -> HankelSpec:
    """Moment sums ``v_j = sum_k alpha_k mu_k^j`` (0^0 = 1), j = 0..(n-1)m."""
    n = dec.dim
    length = generating_length(order, n)
    v = np.zeros(length)
    for a, mu in dec.terms:
        v += a * np.power(float(mu), np.arange(length, dtype=np.float64))
    return build(tuple(float(x) for x in v), order, n)


def dense_from_decomposition(
    dec: VandermondeDecomposition, order: int
) -> DenseSymmetricTensor:
    """Direct rank-one expansion; agrees with ``dense(vandermonde_compose(..))``."""
    from .symtensor import RankOneSum

    terms = tuple((a, moment_vector(mu, dec.dim)) for a, mu in dec.terms)
    return RankOneSum(terms, order).expand(dec.dim)


def centered_integer_nodes(count: int) -> tuple[float, ...]:
    """``count`` distinct integers around 0: 0, 1, -1, 2, -2, .. (sorted)."""
    nodes = [0]
    step = 1
    while len(nodes) < count:
        nodes.append(step)
        if len(nodes) < count:
            nodes.append(-step)
        step += 1
    return tuple(float(x) for x in sorted(nodes))


def _exact_vandermonde_solve(nodes, rhs) -> list[Fraction]:
    # Gaussian elimination over Fractions on the (N, N) system V a = rhs
    # with V[j, k] = nodes[k]**j; exact whenever nodes/rhs are rational.
    n = len(nodes)
    fn = [Fraction(x) for x in nodes]
    a = [[fk**j for fk in fn] for j in range(n)]
    b = [Fraction(x) for x in rhs]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            raise InputError("singular Vandermonde system (repeated nodes?)")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = Fraction(1, 1) / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                b[r] -= f * b[col]
                for cc in range(col, n):
                    a[r][cc] -= f * a[col][cc]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = b[r] - sum(a[r][cc] * x[cc] for cc in range(r + 1, n))
        x[r] = acc / a[r][r]
    return x


def _rational_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) or float(x).is_integer()


def vandermonde_decompose(
    spec: HankelSpec,
    mode: str = "minimal",
    nodes=None,
    residual_tol: float = RECOMPOSE_RESIDUAL_TOL,
) -> VandermondeDecomposition:
    """Recover a Vandermonde decomposition of the generating vector.

    ``minimal`` mode searches for the shortest linear recurrence the
    moments satisfy (window up to half the moment count), takes the real
    simple roots of its characteristic polynomial as nodes and solves for
    the coefficients by least squares; it fails with
    :class:`NoRealMinimalDecomposition` when the recurrence has complex or
    repeated roots, no consistent recurrence exists in the window, or the
    reconstruction residual exceeds ``residual_tol``.

    ``fixed_nodes`` mode solves the square Vandermonde system on exactly
    ``(n-1)m + 1`` pairwise-distinct nodes (default: integers centered at
    0); integer or rational nodes are solved exactly over Fractions.
    Coefficients below ``1e-12`` in magnitude are dropped.
    """
    v = spec.v_array()
    N = v.size
    if mode == "fixed_nodes" or mode == "fixed":
        if nodes is None:
            nodes = centered_integer_nodes(N)
        nodes = [float(x) for x in nodes]
        if len(nodes) != N:
            raise InputError(f"fixed-nodes mode needs exactly {N} nodes, got {len(nodes)}")
        if len(set(nodes)) != N:
            raise InputError("fixed nodes must be pairwise distinct")
        if all(_rational_exact(x) for x in nodes):
            alphas = [float(x) for x in _exact_vandermonde_solve(nodes, v)]
        else:
            vm = np.vander(np.asarray(nodes), N, increasing=True).T
            alphas = list(np.linalg.solve(vm, v))
        terms = tuple(
            (float(a), mu) for a, mu in zip(alphas, nodes) if abs(a) >= ALPHA_DROP_TOL
        )
        return VandermondeDecomposition(terms, spec.dim)

    if mode != "minimal":
        raise InputError(f"unknown decomposition mode {mode!r}")
    if nodes is not None:
        raise InputError("nodes are only accepted in fixed_nodes mode")

    scale = float(np.max(np.abs(v)))
    if scale == 0.0:
        return VandermondeDecomposition((), spec.dim)

    for r in range(1, N // 2 + 1):
        # monic recurrence v_{j+r} = -(q_0 v_j + .. + q_{r-1} v_{j+r-1})
        rows = N - r
        hmat = np.array([v[j : j + r] for j in range(rows)])
        rhs = -v[r : r + rows]
        q, *_ = np.linalg.lstsq(hmat, rhs, rcond=None)
        if np.max(np.abs(hmat @ q - rhs)) > PRONY_RESIDUAL_TOL * max(1.0, scale):
            continue
        char = unipoly.poly(list(q) + [1.0])
        try:
            roots = unipoly.real_roots(char)
        except InputError:
            roots = []
        if sum(m for _, m in roots) != r or any(m != 1 for _, m in roots):
            raise NoRealMinimalDecomposition(
                f"recurrence of order {r} found but its characteristic roots are "
                "not real and simple; use fixed-nodes mode"
            )
        mus = [root for root, _ in roots]
        vm = np.vander(np.asarray(mus), N, increasing=True).T
        alphas, *_ = np.linalg.lstsq(vm, v, rcond=None)
        if np.max(np.abs(vm @ alphas - v)) > residual_tol:
            raise NoRealMinimalDecomposition(
                f"nodes recovered at order {r} but reconstruction residual exceeds "
                f"{residual_tol}; use fixed-nodes mode"
            )
        terms = tuple((float(a), float(mu)) for a, mu in zip(alphas, mus))
        return VandermondeDecomposition(terms, spec.dim)

    raise NoRealMinimalDecomposition(
        f"no consistent recurrence of order <= {N // 2} fits the moments; "
        "use fixed-nodes mode"
    )


def is_complete_decomposition(dec: VandermondeDecomposition) -> bool:
    """All coefficients positive (every term a nonnegative-node power with
    positive weight)."""
    return all(a > 0.0 for a, _ in dec.terms)


# -- sign conditions and low-rank classification ------------------------------


@dataclass(frozen=True)
class SignConditionReport:
    """Necessary sign conditions a positive semi-definite composed tensor
    must satisfy; any ``False`` field certifies it is not PSD.
    ``low_rank_all_positive_ok`` is ``None`` when rank > dim."""

    sum_ok: bool
    positive_count_ok: bool
    low_rank_all_positive_ok: bool | None

    @property
    def any_violation(self) -> bool:
        return (not self.sum_ok) or (not self.positive_count_ok) or (
            self.low_rank_all_positive_ok is False
        )


def psd_sign_necessary_checks(
    dec: VandermondeDecomposition, dim: int | None = None
) -> SignConditionReport:
    """Check (i) coefficient sum >= 0, (ii) at least ``dim`` positive
    coefficients when rank > dim, (iii) all positive when rank <= dim."""
    n = dec.dim if dim is None else dim
    alphas = dec.alphas()
    r = dec.rank
    positives = int(np.sum(alphas > 0.0))
    return SignConditionReport(
        sum_ok=bool(alphas.sum() >= 0.0),
        positive_count_ok=bool(r <= n or positives >= n),
        low_rank_all_positive_ok=None if r > n else bool(positives == r),
    )


def _nullspace_basis(mat: np.ndarray, dim: int) -> list[np.ndarray]:
    # deterministic nullspace via Gauss-Jordan elimination, pivot column
    # chosen by magnitude (lowest index on ties)
    if mat.size == 0:
        return [np.eye(dim)[i] for i in range(dim)]
    a = np.array(mat, dtype=np.float64)
    nrows = a.shape[0]
    pivots: list[tuple[int, int]] = []
    free = list(range(dim))
    row = 0
    while row < nrows and free:
        col = max(free, key=lambda c: (abs(a[row, c]), -c))
        if abs(a[row, col]) < 1e-13:
            row += 1  # dependent row
            continue
        a[row] /= a[row, col]
        for rr in range(nrows):
            if rr != row and a[rr, col] != 0.0:
                a[rr] -= a[rr, col] * a[row]
        pivots.append((row, col))
        free.remove(col)
        row += 1
    basis = []
    for fc in free:
        x = np.zeros(dim)
        x[fc] = 1.0
        for prow, pcol in pivots:
            x[pcol] = -a[prow, fc]
        basis.append(x)
    return basis


@dataclass(frozen=True)
class LowRankPsdVerdict:
    psd_complete: bool
    witness: tuple | None
    value: float | None


def low_rank_psd_classify(
    dec: VandermondeDecomposition, order: int, dim: int | None = None
) -> LowRankPsdVerdict:
    """PSD classification of the order-``m`` composed tensor when rank <= dim.

    With at most ``dim`` terms over distinct nodes, the composed even-order
    tensor is positive semi-definite exactly when all coefficients are
    positive.  Otherwise a witness is built by solving the homogeneous
    Vandermonde system that annihilates every term except one with a
    negative coefficient: there ``apply(x) = alpha_t (u_t . x)^m < 0``.
    The witness is scaled to unit max-norm.
    """
    if order % 2 != 0:
        raise UnsupportedQueryError(
            f"classification is defined for even order only, got {order}"
        )
    n = dec.dim if dim is None else dim
    r = dec.rank
    if r > n:
        raise UnsupportedQueryError(
            f"low-rank classification needs rank <= dim, got rank {r} > dim {n}"
        )
    alphas = dec.alphas()
    if np.all(alphas > 0.0):
        return LowRankPsdVerdict(True, None, None)
    t = int(np.nonzero(alphas < 0.0)[0][0])
    u_all = dec.node_matrix()
    u_t = u_all[t]
    others = np.delete(u_all, t, axis=0)
    if others.size == 0:
        x = np.eye(n)[0]  # u_t . e_1 = 1 for every moment vector
    else:
        basis = _nullspace_basis(others, n)
        x = max(basis, key=lambda b: abs(float(u_t @ b)))
        if abs(float(u_t @ x)) < 1e-12:
            raise InputError("degenerate node system: no separating witness found")
    x = x / np.max(np.abs(x))
    value = float(np.sum(alphas * (u_all @ x) ** order))
    return LowRankPsdVerdict(False, tuple(float(c) for c in x), value)
