"""Dense symmetric tensors stored one value per canonical multi-index.

An order-``m`` dimension-``n`` symmetric tensor is determined by its values
on non-decreasing index tuples ``(i_1 <= ... <= i_m)``; there are
``C(n+m-1, m)`` of them.  Entry lookups sort the requested tuple first, so
symmetry holds by construction.  The homogeneous form ``A x^m`` and the
contraction ``A x^{m-1}`` (component ``i`` sums ``a_{i,i_2..i_m}
x_{i_2}..x_{i_m}``) weight each canonical entry by its multinomial
multiplicity ``m! / (k_1! .. k_n!)``, computed in exact integer arithmetic.

Storage is a flat float array indexed by the colexicographic rank of the
canonical tuple, which is computable in O(m) from binomials, so lookups are
O(m log m) after sorting.  Indices are 1-based at every public boundary.

Tensors are immutable after construction (the value buffer is marked
read-only) and therefore safe to share across concurrent readers.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

HARD_MAX_ORDER = 8
HARD_MAX_DIM = 32
DIM_GUARD_ENV = "TENSTRUCT_MAX_DIM"
DEFAULT_ENTRY_TOL = 1e-10


def expansion_dim_limit() -> int:
    """Current cap on tensor dimension for dense expansion (env-tunable)."""
    return int(os.environ.get(DIM_GUARD_ENV, "16"))


def check_shape(order: int, dim: int) -> None:
    if not (isinstance(order, int) and isinstance(dim, int)):
        raise InputError("order and dim must be integers")
    if order < 2:
        raise InputError(f"tensor order must be >= 2, got {order}")
    if dim < 1:
        raise InputError(f"tensor dimension must be >= 1, got {dim}")
    if order > HARD_MAX_ORDER or dim > HARD_MAX_DIM:
        raise InputError(
            f"order {order} / dimension {dim} beyond desk scale "
            f"(max order {HARD_MAX_ORDER}, max dimension {HARD_MAX_DIM})"
        )
    limit = expansion_dim_limit()
    if dim > limit:
        raise InputError(
            f"dimension {dim} exceeds the expansion guard {limit}; "
            f"raise {DIM_GUARD_ENV} to allow it"
        )


def num_canonical(order: int, dim: int) -> int:
    return math.comb(dim + order - 1, order)


def canonical_rank(idx0: Sequence[int]) -> int:
    """Colexicographic rank of a sorted 0-based index tuple.

    Maps the non-decreasing tuple to a strictly increasing one via
    ``a_t = i_t + t`` and ranks it in the combinatorial number system:
    ``rank = sum_t C(a_t, t+1)``.  Independent of the dimension.
    """
    return sum(math.comb(v + t, t + 1) for t, v in enumerate(idx0))


def _colex_tuples(order: int, dim: int) -> Iterable[tuple[int, ...]]:
    # yields canonical 0-based tuples in colexicographic (= rank) order
    if order == 0:
        yield ()
        return
    for last in range(dim):
        for prefix in _colex_tuples(order - 1, last + 1):
            yield prefix + (last,)


@lru_cache(maxsize=64)
def _rows_cached(order: int, dim: int) -> np.ndarray:
    rows = np.array(list(_colex_tuples(order, dim)), dtype=np.int64)
    rows.flags.writeable = False
    return rows


@lru_cache(maxsize=64)
def _mults_cached(order: int, dim: int) -> np.ndarray:
    fact = math.factorial(order)
    mults = np.array(
        [
            fact // math.prod(math.factorial(c) for c in Counter(row).values())
            for row in _colex_tuples(order, dim)
        ],
        dtype=np.float64,
    )
    mults.flags.writeable = False
    return mults


def canonicalize(idx: Sequence[int], order: int, dim: int) -> tuple[int, ...]:
    """Validate a 1-based index tuple and return its sorted 0-based form."""
    if len(idx) != order:
        raise InputError(f"index tuple has length {len(idx)}, expected {order}")
    out = []
    for i in idx:
        ii = int(i)
        if ii != i or not (1 <= ii <= dim):
            raise InputError(f"index {i} out of range 1..{dim}")
        out.append(ii - 1)
    out.sort()
    return tuple(out)


class DenseSymmetricTensor:
    """Symmetric tensor with canonical flat storage.

    ``values`` must hold the canonical entries in colexicographic rank
    order; prefer the classmethod constructors.
    """

    __slots__ = ("order", "dim", "_vals")

    def __init__(self, order: int, dim: int, values):
        check_shape(order, dim)
        vals = np.ascontiguousarray(values, dtype=np.float64)
        expected = num_canonical(order, dim)
        if vals.shape != (expected,):
            raise InputError(
                f"expected {expected} canonical values for order {order} "
                f"dim {dim}, got shape {vals.shape}"
            )
        self.order = order
        self.dim = dim
        self._vals = vals.copy()
        self._vals.flags.writeable = False

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, order: int, dim: int) -> "DenseSymmetricTensor":
        check_shape(order, dim)
        return cls(order, dim, np.zeros(num_canonical(order, dim)))

    @classmethod
    def from_entries(
        cls, order: int, dim: int, entries: Iterable[tuple[Sequence[int], float]]
    ) -> "DenseSymmetricTensor":
        """Build from (1-based index tuple, value) pairs; unlisted entries are 0."""
        check_shape(order, dim)
        vals = np.zeros(num_canonical(order, dim))
        for idx, val in entries:
            vals[canonical_rank(canonicalize(idx, order, dim))] = float(val)
        return cls(order, dim, vals)

    @classmethod
    def from_rank_one_sum(cls, s: "RankOneSum", dim: int) -> "DenseSymmetricTensor":
        """Expand ``sum_k w_k (v_k)^{tensor power m}`` to dense canonical form."""
        check_shape(s.order, dim)
        rows = _rows_cached(s.order, dim)
        vals = np.zeros(rows.shape[0])
        for weight, vector in s.terms:
            v = np.asarray(vector, dtype=np.float64)
            if v.shape != (dim,):
                raise InputError(
                    f"rank-one vector has shape {v.shape}, expected ({dim},)"
                )
            vals += weight * np.prod(v[rows], axis=1)
        return cls(s.order, dim, vals)

    # -- basic access ------------------------------------------------------

    @property
    def values(self) -> np.ndarray:
        """Read-only canonical value buffer (colex rank order)."""
        return self._vals

    def canonical_indices(self) -> np.ndarray:
        """(R, m) array of canonical 0-based index rows in rank order."""
        return _rows_cached(self.order, self.dim)

    def multiplicities(self) -> np.ndarray:
        return _mults_cached(self.order, self.dim)

    def entry(self, idx: Sequence[int]) -> float:
        """Entry at a 1-based index tuple; invariant under permutations."""
        canon = canonicalize(idx, self.order, self.dim)
        return float(self._vals[canonical_rank(canon)])

    # -- forms -------------------------------------------------------------

    def _check_vector(self, x) -> np.ndarray:
        v = np.asarray(x, dtype=np.float64)
        if v.shape != (self.dim,):
            raise InputError(f"vector has shape {v.shape}, expected ({self.dim},)")
        return v

    def apply(self, x) -> float:
        """Homogeneous form value ``sum a_{i_1..i_m} x_{i_1} .. x_{i_m}``."""
        v = self._check_vector(x)
        w = self._vals * self.multiplicities()
        return float(w @ np.prod(v[self.canonical_indices()], axis=1))

    def apply_many(self, xs) -> np.ndarray:
        """Vectorized :meth:`apply` over rows of an (N, dim) array."""
        X = np.asarray(xs, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise InputError(f"batch has shape {X.shape}, expected (N, {self.dim})")
        w = self._vals * self.multiplicities()
        return np.prod(X[:, self.canonical_indices()], axis=2) @ w

    def contract(self, x) -> np.ndarray:
        """Vector with component ``i = sum a_{i,i_2..i_m} x_{i_2}..x_{i_m}``.

        Satisfies ``<contract(x), x> == apply(x)``.
        """
        v = self._check_vector(x)
        rows = self.canonical_indices()
        m = self.order
        g = v[rows]
        w = self._vals * self.multiplicities() / m
        out = np.zeros(self.dim)
        for p in range(m):
            partial = w * np.prod(np.delete(g, p, axis=1), axis=1)
            np.add.at(out, rows[:, p], partial)
        return out

    # -- combination / comparison ------------------------------------------

    def _check_same_shape(self, other: "DenseSymmetricTensor") -> None:
        if self.order != other.order or self.dim != other.dim:
            raise InputError(
                f"shape mismatch: ({self.order},{self.dim}) vs "
                f"({other.order},{other.dim})"
            )

    def hadamard(self, other: "DenseSymmetricTensor") -> "DenseSymmetricTensor":
        """Entrywise product; result is again symmetric."""
        self._check_same_shape(other)
        return DenseSymmetricTensor(self.order, self.dim, self._vals * other._vals)

    def max_abs_diff(self, other: "DenseSymmetricTensor") -> float:
        self._check_same_shape(other)
        return float(np.max(np.abs(self._vals - other._vals)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DenseSymmetricTensor)
            and self.order == other.order
            and self.dim == other.dim
            and bool(np.array_equal(self._vals, other._vals))
        )

    def __hash__(self):
        return hash((self.order, self.dim, self._vals.tobytes()))

    def __repr__(self):
        return f"DenseSymmetricTensor(order={self.order}, dim={self.dim})"

    def nonzero_entries(self) -> list[tuple[tuple[int, ...], float]]:
        """(1-based canonical index, value) pairs for all nonzero entries."""
        rows = self.canonical_indices()
        out = []
        for r in np.nonzero(self._vals)[0]:
            out.append((tuple(int(i) + 1 for i in rows[r]), float(self._vals[r])))
        return out


@dataclass(frozen=True)
class RankOneSum:
    """Weighted sum of symmetric rank-one powers ``sum_k w_k (v_k)^{x m}``.

    Terms with zero weight are rejected; vectors are stored as read-only
    float arrays.
    """

    terms: tuple
    order: int

    def __post_init__(self):
        if self.order < 2:
            raise InputError(f"order must be >= 2, got {self.order}")
        norm_terms = []
        for weight, vector in self.terms:
            w = float(weight)
            if w == 0.0:
                raise InputError("rank-one term with zero weight is disallowed")
            v = np.asarray(vector, dtype=np.float64).copy()
            if v.ndim != 1:
                raise InputError("rank-one vectors must be 1-D")
            v.flags.writeable = False
            norm_terms.append((w, v))
        object.__setattr__(self, "terms", tuple(norm_terms))

    def expand(self, dim: int) -> DenseSymmetricTensor:
        return DenseSymmetricTensor.from_rank_one_sum(self, dim)


def most_negative_entry(t: DenseSymmetricTensor):
    """(1-based canonical index, value) of the smallest entry, or ``None``
    if no entry is negative."""
    r = int(np.argmin(t.values))
    val = float(t.values[r])
    if val >= 0.0:
        return None
    idx = tuple(int(i) + 1 for i in t.canonical_indices()[r])
    return idx, val


# -- copositivity probe ------------------------------------------------------


@dataclass(frozen=True)
class CopositivityVerdict:
    """Outcome of a sampling search for ``apply(x) < 0`` on the orthant."""

    violated: bool
    witness: tuple | None
    value: float | None
    probes_used: int


def structured_orthant_probes(dim: int) -> np.ndarray:
    """Deterministic nonnegative probe directions: the coordinate vectors,
    the midpoints ``(e_i+e_j)/2``, and the biased midpoints ``e_i + e_j/2``
    (midpoint of ``e_i`` and ``e_i + e_j``) for every ordered pair."""
    eye = np.eye(dim)
    probes = [eye[i] for i in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            probes.append((eye[i] + eye[j]) / 2.0)
    for i in range(dim):
        for j in range(dim):
            if i != j:
                probes.append(eye[i] + eye[j] / 2.0)
    return np.array(probes)


def simplex_samples(dim: int, trials: int, seed: int) -> np.ndarray:
    """Uniform samples on the probability simplex, counter-based for
    reproducibility: trial blocks come from a Philox stream keyed by
    ``seed``, so the batch is deterministic and independent of chunking."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    e = rng.standard_exponential((trials, dim))
    return e / e.sum(axis=1, keepdims=True)


def copositive_probe(
    t: DenseSymmetricTensor, trials: int, seed: int, tol: float = DEFAULT_ENTRY_TOL
) -> CopositivityVerdict:
    """Search the nonnegative orthant for a witness ``apply(x) < -tol``.

    Structured probes run first (so integer-valued witnesses are reported
    exactly), then ``trials`` seeded simplex samples.  Deterministic for a
    fixed seed.  A ``no violation`` verdict is evidence, not proof.
    """
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    structured = structured_orthant_probes(t.dim)
    batches = [structured, simplex_samples(t.dim, trials, seed)]
    used = 0
    for batch in batches:
        vals = t.apply_many(batch)
        neg = np.nonzero(vals < -tol)[0]
        if neg.size:
            k = int(neg[0])
            return CopositivityVerdict(
                True, tuple(float(c) for c in batch[k]), float(vals[k]), used + k + 1
            )
        used += batch.shape[0]
    return CopositivityVerdict(False, None, None, used)
