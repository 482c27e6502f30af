"""Independent oracles used across the test suite.

These deliberately avoid the library's weighted-canonical evaluation paths:
``naive_apply``/``naive_contract`` loop over all n^m ordered index tuples
through ``entry`` only, ``rank_one_entry`` multiplies vector components
directly, and ``brute_s_count`` enumerates tuples.  The closed-form 2x2
eigenvalue formula backs the dimension-2 solvers.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def naive_apply(t, x) -> float:
    n, m = t.dim, t.order
    total = 0.0
    for idx in itertools.product(range(1, n + 1), repeat=m):
        prod = t.entry(idx)
        for i in idx:
            prod *= x[i - 1]
        total += prod
    return total


def naive_contract(t, x) -> np.ndarray:
    n, m = t.dim, t.order
    out = np.zeros(n)
    for i in range(1, n + 1):
        for rest in itertools.product(range(1, n + 1), repeat=m - 1):
            prod = t.entry((i,) + rest)
            for j in rest:
                prod *= x[j - 1]
            out[i - 1] += prod
    return out


def rank_one_entry(terms, idx) -> float:
    """Direct product formula sum_k w_k prod_j v_k[i_j] (idx 1-based)."""
    total = 0.0
    for w, v in terms:
        prod = w
        for i in idx:
            prod *= v[i - 1]
        total += prod
    return total


def brute_s_count(k, m, n) -> int:
    return sum(
        1
        for idx in itertools.product(range(1, n + 1), repeat=m)
        if sum(idx) - m == k
    )


def sym2x2_eigvals(a, b, c):
    """Eigenvalues of [[a, b], [b, c]], ascending."""
    mean = 0.5 * (a + c)
    gap = math.hypot(0.5 * (a - c), b)
    return mean - gap, mean + gap


def poly_from_roots(lin_roots, quad_pairs=()):
    """Coefficients (ascending) of prod (x - r) * prod (x^2 + b x + c)."""
    coeffs = np.array([1.0])
    for r in lin_roots:
        coeffs = np.convolve(coeffs, np.array([-float(r), 1.0]))
    for b, c in quad_pairs:
        coeffs = np.convolve(coeffs, np.array([float(c), float(b), 1.0]))
    return list(coeffs)


def random_cauchy_generators(rng, n, low=-3.0, high=3.0, min_abs=0.05):
    """(c, d) samples in [low, high] with entries bounded away from 0."""
    while True:
        c = rng.uniform(low, high, size=n)
        d = rng.uniform(low, high, size=n)
        if np.min(np.abs(c)) >= min_abs and np.min(np.abs(d)) >= min_abs:
            return c, d
