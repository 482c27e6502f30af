"""Univariate real polynomials: evaluation, real-root isolation, and a
global nonnegativity decision.

Coefficients are plain floats with ``coeffs[k]`` multiplying ``mu**k``;
trailing zeros are trimmed and coefficients below ``1e-14 * max|coeffs|``
are treated as zero at construction.  The zero polynomial is the empty
coefficient sequence (degree -1).

Root isolation recurses on the derivative: the real critical points split
the Cauchy-bound interval into strictly monotone pieces, each of which is
scanned for a sign change and bisected, followed by a Newton polish.
Critical points where the polynomial itself (numerically) vanishes are
touch roots; multiplicities come from the chain of derivative values at
the root.  No linear algebra is involved, and the sign logic near interval
boundaries stays explicit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

COEFF_TRIM_REL = 1e-14
DEFAULT_ROOT_TOL = 1e-12


@dataclass(frozen=True)
class UnivariatePoly:
    coeffs: tuple[float, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, mu: float) -> float:
        return eval_poly(self, mu)


def poly(coeffs) -> UnivariatePoly:
    """Normalized polynomial: tiny coefficients zeroed, trailing zeros cut."""
    c = [float(x) for x in coeffs]
    if c:
        mx = max(abs(x) for x in c)
        if mx > 0.0:
            c = [0.0 if abs(x) < COEFF_TRIM_REL * mx else x for x in c]
        else:
            c = []
    while c and c[-1] == 0.0:
        c.pop()
    return UnivariatePoly(tuple(c))


def eval_poly(p: UnivariatePoly, mu: float) -> float:
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * mu + c
    return acc


def derivative(p: UnivariatePoly) -> UnivariatePoly:
    return poly([k * c for k, c in enumerate(p.coeffs)][1:])


def cauchy_root_bound(p: UnivariatePoly) -> float:
    """1 + max |c_k / c_deg|: every real root lies strictly inside."""
    d = p.degree
    if d < 1:
        return 1.0
    lead = abs(p.coeffs[d])
    return 1.0 + max(abs(c) for c in p.coeffs[:d]) / lead


def _near_zero_tol(p: UnivariatePoly, tol: float) -> float:
    mx = max(abs(c) for c in p.coeffs) if p.coeffs else 0.0
    return tol * (1.0 + mx)


def _bisect_root(p: UnivariatePoly, a: float, b: float, fa: float, tol: float) -> float:
    # invariant: sign change between a and b, sign(p(a)) == sign(fa)
    sa = fa > 0
    while b - a > tol:
        mid = 0.5 * (a + b)
        if mid == a or mid == b:
            break
        fm = eval_poly(p, mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == sa:
            a = mid
        else:
            b = mid
    root = 0.5 * (a + b)
    # Newton polish; stay inside the bracket
    dp = derivative(p)
    for _ in range(4):
        slope = eval_poly(dp, root)
        if slope == 0.0:
            break
        step = eval_poly(p, root) / slope
        cand = root - step
        if not (a - tol <= cand <= b + tol):
            break
        root = cand
    return root


def _root_positions(p: UnivariatePoly, tol: float) -> list[float]:
    d = p.degree
    if d < 1:
        return []
    if d == 1:
        return [-p.coeffs[0] / p.coeffs[1]]
    bound = cauchy_root_bound(p)
    crit = [c for c in _root_positions(derivative(p), tol) if -bound < c < bound]
    crit.sort()
    ztol = _near_zero_tol(p, tol)
    pts = [-bound]
    for c in crit:
        if not pts or c - pts[-1] > tol:
            pts.append(c)
    pts.append(bound)
    vals = [eval_poly(p, x) for x in pts]
    roots = []
    # touch roots sit at critical points where p (numerically) vanishes
    for x, f in zip(pts[1:-1], vals[1:-1]):
        if abs(f) <= ztol:
            roots.append(x)
    # p is strictly monotone between consecutive points: one crossing at most
    for (a, b), (fa, fb) in zip(zip(pts, pts[1:]), zip(vals, vals[1:])):
        if abs(fa) <= ztol or abs(fb) <= ztol:
            continue
        if (fa > 0) != (fb > 0):
            roots.append(_bisect_root(p, a, b, fa, tol))
    roots.sort()
    merged: list[float] = []
    merge_eps = max(4.0 * tol, 1e-9)
    for r in roots:
        if merged and r - merged[-1] <= merge_eps * max(1.0, abs(r)):
            continue
        merged.append(r)
    return merged


def _multiplicity(p: UnivariatePoly, root: float, tol: float) -> int:
    mult = 1
    q = derivative(p)
    while q.degree >= 0 and abs(eval_poly(q, root)) <= _near_zero_tol(q, tol):
        mult += 1
        q = derivative(q)
    return min(mult, p.degree)


def real_roots(
    p: UnivariatePoly, tol: float = DEFAULT_ROOT_TOL
) -> list[tuple[float, int]]:
    """All real roots to absolute accuracy ``tol`` with multiplicities,
    sorted ascending.  Raises on the zero polynomial."""
    if p.degree < 0:
        raise InputError("real_roots of the zero polynomial is undefined")
    if tol <= 0:
        raise InputError(f"tol must be positive, got {tol}")
    positions = _root_positions(p, tol)
    out = [(r, _multiplicity(p, r, tol)) for r in positions]
    total = sum(m for _, m in out)
    if total > p.degree:  # numeric safety: never report more than degree
        out = [(r, 1) for r, _ in out][: p.degree]
    return out


@dataclass(frozen=True)
class NonnegVerdict:
    """Global nonnegativity verdict.  For a nonnegative polynomial ``mu`` /
    ``value`` locate the global minimum; otherwise they are a concrete
    witness with ``value < 0``."""

    nonnegative: bool
    mu: float
    value: float


def nonneg_on_reals(p: UnivariatePoly) -> NonnegVerdict:
    """Decide ``p(mu) >= 0`` for all real ``mu``.

    Zero polynomial: vacuously nonnegative.  Odd degree or a negative
    leading coefficient: a witness just outside the root bound, where the
    sign is that of the dominant term.  Otherwise the minimum over the
    critical points decides.
    """
    d = p.degree
    if d < 0:
        return NonnegVerdict(True, 0.0, 0.0)
    if d == 0:
        c = p.coeffs[0]
        return NonnegVerdict(c >= 0.0, 0.0, c)
    lead = p.coeffs[d]
    if d % 2 == 1 or lead < 0.0:
        mu = -cauchy_root_bound(p) if (d % 2 == 1 and lead > 0.0) else cauchy_root_bound(p)
        val = eval_poly(p, mu)
        while val >= 0.0:  # cannot trigger past the root bound; pure safety
            mu *= 2.0
            val = eval_poly(p, mu)
        return NonnegVerdict(False, mu, val)
    crit = _root_positions(derivative(p), DEFAULT_ROOT_TOL)
    best_mu, best_val = min(
        ((x, eval_poly(p, x)) for x in crit), key=lambda t: (t[1], t[0])
    )
    return NonnegVerdict(best_val >= 0.0, best_mu, best_val)
