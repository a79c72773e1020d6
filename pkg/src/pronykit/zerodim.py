"""Quotient models from kernel data and their zero loci.

A kernel of polynomials supported on a degree set D determines, when the
degree is high enough, multiplication matrices on the complement of the
leading monomials.  Common zeros are then read off left eigenvectors of a
random linear combination.  The exact path stays in Fraction arithmetic end
to end; float eigendata is only trusted after residual checks.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from .errors import (
    DegreeInsufficient,
    EigenFailure,
    IrrationalSpectrum,
    NotZeroDimensional,
    RepeatedEigenvalues,
    ResidualTooLarge,
)
from .linalg import Matrix, char_poly, kernel_basis, rref
from .poly import MonomialOrder, Poly, border, is_order_ideal
from .vanish import PointSet, point_power

_COEFF_RANGE = 1009
_MAX_DRAWS = 5


class QuotientModel:
    """Multiplication-matrix model of a candidate zero-dimensional quotient.

    ``normal_set`` indexes the model space (ascending); ``reductions`` maps
    every monomial of the normal set and its border to coordinates over the
    normal set; ``matrices`` hold multiplication by each variable.
    """

    __slots__ = ("n", "order", "normal_set", "reductions", "matrices", "exact")

    def __init__(self, n, order, normal_set, reductions, matrices, exact):
        self.n = n
        self.order = order
        self.normal_set = tuple(normal_set)
        self.reductions = dict(reductions)
        self.matrices = tuple(matrices)
        self.exact = exact

    @property
    def dimension(self):
        return len(self.normal_set)

    def __repr__(self):
        return f"QuotientModel(n={self.n}, dim={self.dimension}, exact={self.exact})"


def _model_from_pivots(n, order, labels_desc, reduced_rows, pivots, exact, commute_tol):
    """Assemble a QuotientModel from row-reduced kernel coefficients.

    ``labels_desc`` are the degree set in descending order, ``reduced_rows``
    the reduced coefficient rows over those columns, ``pivots`` their pivot
    column indices.
    """
    zero_exp = (0,) * n
    pivot_monomials = {labels_desc[c] for c in pivots}
    if zero_exp in pivot_monomials:
        # a unit lies in the span, so nothing vanishes: empty model
        return QuotientModel(n, order, (), {}, tuple(Matrix([], ncols=0) for _ in range(n)), exact)

    normal = [m for j, m in enumerate(labels_desc) if j not in set(pivots)]
    normal = order.sort(normal)
    if not is_order_ideal(normal, n):
        raise DegreeInsufficient("leading-term complement is not an order ideal")
    normal_border = border(set(normal), n)
    degree_set = set(labels_desc)
    missing = normal_border - degree_set
    if missing:
        raise DegreeInsufficient(
            f"border monomials outside the degree set: {sorted(missing)}"
        )

    col_of = {m: j for j, m in enumerate(labels_desc)}
    npos = {m: i for i, m in enumerate(normal)}
    k = len(normal)
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0

    reductions = {}
    for m in normal:
        unit = [zero] * k
        unit[npos[m]] = one
        reductions[m] = tuple(unit)
    row_of_pivot = {c: i for i, c in enumerate(pivots)}
    for b in normal_border:
        row = reduced_rows[row_of_pivot[col_of[b]]]
        reductions[b] = tuple(-row[col_of[m]] for m in normal)

    matrices = []
    for i in range(n):
        cols = []
        for m in normal:
            up = m[:i] + (m[i] + 1,) + m[i + 1 :]
            cols.append(reductions[up])
        matrices.append(
            Matrix([[cols[j][r] for j in range(k)] for r in range(k)], ncols=k)
        )

    for i in range(n):
        for j in range(i + 1, n):
            left = matrices[i] @ matrices[j]
            right = matrices[j] @ matrices[i]
            if exact:
                if left != right:
                    raise NotZeroDimensional(f"multiplication by X{i+1}, X{j+1} does not commute")
            else:
                scale = 1.0 + max(
                    abs(x) for row in left.rows + right.rows for x in row
                )
                diff = max(
                    abs(a - b)
                    for ra, rb in zip(left.rows, right.rows)
                    for a, b in zip(ra, rb)
                )
                if diff > commute_tol * scale:
                    raise NotZeroDimensional(
                        f"multiplication matrices commute only to {diff / scale:.2e}"
                    )
    return QuotientModel(n, order, normal, reductions, matrices, exact)


def quotient_model(space, order=None):
    """Exact quotient model from a vanishing-space basis.

    Raises DegreeInsufficient when the kernel does not pin down a model at
    this degree (recoverable: retry one degree higher) and
    NotZeroDimensional when the candidate matrices fail to commute.
    """
    order = order or space.order or MonomialOrder()
    n = space.n
    labels_desc = list(reversed(order.sort(space.degrees)))
    if not space.basis:
        if not labels_desc:
            return QuotientModel(n, order, (), {}, tuple(Matrix([], ncols=0) for _ in range(n)), True)
        raise DegreeInsufficient("zero kernel on a nonempty degree set")
    rows = [[p.coeff(m) for m in labels_desc] for p in space.basis]
    R, pivots, _ = rref(Matrix(rows, ncols=len(labels_desc)))
    return _model_from_pivots(n, order, labels_desc, R.rows, pivots, True, 0.0)


def quotient_model_float(space, order=None, tol=1e-8):
    """Float variant: pivots chosen by magnitude against a relative threshold."""
    order = order or space.order or MonomialOrder()
    n = space.n
    labels_desc = list(reversed(order.sort(space.degrees)))
    if not space.basis:
        if not labels_desc:
            return QuotientModel(n, order, (), {}, tuple(Matrix([], ncols=0) for _ in range(n)), False)
        raise DegreeInsufficient("zero kernel on a nonempty degree set")
    A = np.array(
        [[float(p.coeff(m)) for m in labels_desc] for p in space.basis], dtype=float
    )
    scale = max(1e-300, float(np.max(np.abs(A))))
    m_rows, n_cols = A.shape
    r = 0
    pivots = []
    for c in range(n_cols):
        if r == m_rows:
            break
        idx = int(np.argmax(np.abs(A[r:, c]))) + r
        if abs(A[idx, c]) <= tol * scale:
            continue
        A[[r, idx]] = A[[idx, r]]
        A[r] = A[r] / A[r, c]
        for i in range(m_rows):
            if i != r and A[i, c]:
                A[i] = A[i] - A[i, c] * A[r]
        pivots.append(c)
        r += 1
    rows = [[float(x) for x in A[i]] for i in range(m_rows)]
    return _model_from_pivots(n, order, labels_desc, rows, pivots, False, 1e-6)


class ZeroLocus:
    """Recovered common zeros plus the worst model-relation violation."""

    __slots__ = ("points", "exact", "residual")

    def __init__(self, points, exact, residual):
        self.points = points
        self.exact = exact
        self.residual = residual

    def __repr__(self):
        return f"ZeroLocus({len(self.points)} points, exact={self.exact})"


def _combination(model, coeffs):
    k = model.dimension
    total = Matrix([[type(coeffs[0])(0)] * k for _ in range(k)], ncols=k)
    for c, M in zip(coeffs, model.matrices):
        total = total + M.scale(c)
    return total


def _draw_coeffs(model, rng, exact):
    # univariate models have a canonical combination; redraws are pointless
    if model.n == 1:
        return (Fraction(1),) if exact else (1.0,)
    raw = [rng.randint(1, _COEFF_RANGE) for _ in range(model.n)]
    return tuple(Fraction(v) if exact else float(v) for v in raw)


def zero_locus_exact(model, rng=None):
    """Common zeros of the modeled ideal over the rationals.

    Distinct-eigenvalue protocol: a random integer combination of the
    multiplication matrices must have squarefree rational spectrum; linear
    form collisions between distinct points are retried with fresh draws.
    """
    rng = rng or random.Random(0)
    k = model.dimension
    n = model.n
    if k == 0:
        return ZeroLocus(PointSet(n, ()), True, Fraction(0))
    one_idx = model.normal_set.index((0,) * n)
    last_error = None
    for _ in range(1 if n == 1 else _MAX_DRAWS):
        coeffs = _draw_coeffs(model, rng, True)
        M = _combination(model, coeffs)
        roots, fully_split = rational_roots(char_poly(M))
        if not fully_split:
            raise IrrationalSpectrum(
                "combination spectrum does not split over the rationals"
            )
        if len(set(roots)) != len(roots):
            last_error = RepeatedEigenvalues(f"repeated eigenvalue among {len(roots)}")
            continue
        Mt = M.transpose()
        points = []
        retry = False
        for lam in roots:
            vecs = kernel_basis(Mt - Matrix.identity(k).scale(lam))
            if len(vecs) != 1 or vecs[0][one_idx] == 0:
                retry = True
                break
            v = vecs[0]
            inv = Fraction(1) / v[one_idx]
            w = [x * inv for x in v]
            point = tuple(
                sum(
                    r * w[j]
                    for j, r in enumerate(
                        model.reductions[(0,) * i + (1,) + (0,) * (n - 1 - i)]
                    )
                )
                for i in range(n)
            )
            points.append(point)
        if retry:
            last_error = RepeatedEigenvalues("eigenspace did not split the points")
            continue
        residual = Fraction(0)
        for b, red in model.reductions.items():
            for x in points:
                rel = point_power(x, b) - sum(
                    r * point_power(x, m) for r, m in zip(red, model.normal_set)
                )
                residual = max(residual, abs(rel))
        assert residual == 0, "exact locus violated its own model relations"
        return ZeroLocus(PointSet(n, sorted(points)), True, residual)
    raise last_error or RepeatedEigenvalues("could not separate the points")


def zero_locus_float(model, tol=1e-6, rng=None):
    """Float locus via numpy eigendata, gated by residual checks."""
    rng = rng or random.Random(0)
    k = model.dimension
    n = model.n
    if k == 0:
        return ZeroLocus(PointSet(n, ()), False, 0.0)
    one_idx = model.normal_set.index((0,) * n)
    reds = {m: np.array([float(x) for x in red]) for m, red in model.reductions.items()}
    for attempt in range(1 if n == 1 else _MAX_DRAWS):
        coeffs = _draw_coeffs(model, rng, False)
        M = _combination(model, coeffs)
        A = np.array([[float(x) for x in row] for row in M.rows]).T
        try:
            eigvals, eigvecs = np.linalg.eig(A)
        except np.linalg.LinAlgError as exc:
            raise EigenFailure(str(exc)) from exc
        scale = 1.0 + float(np.max(np.abs(eigvals)))
        real = np.abs(eigvals.imag) <= tol * scale
        if int(real.sum()) < k:
            raise EigenFailure(
                f"only {int(real.sum())} of {k} eigenvalues are real to tolerance"
            )
        order_idx = np.argsort(eigvals.real)
        lams = eigvals.real[order_idx]
        if k > 1 and np.min(np.diff(lams)) <= tol * scale:
            if attempt + 1 < _MAX_DRAWS:
                continue
            raise EigenFailure("eigenvalues persistently collide")
        points = []
        for idx in order_idx:
            v = eigvecs[:, idx]
            if abs(v[one_idx]) < 1e-12 * float(np.max(np.abs(v))):
                raise EigenFailure("eigenvector has no constant coordinate")
            w = v / v[one_idx]
            if float(np.max(np.abs(w.imag))) > tol * (1.0 + float(np.max(np.abs(w.real)))):
                raise EigenFailure("eigenvector is not real after normalization")
            w = w.real
            point = tuple(
                float(reds[(0,) * i + (1,) + (0,) * (n - 1 - i)] @ w) for i in range(n)
            )
            points.append(point)
        residual = 0.0
        for b, red in model.reductions.items():
            for x in points:
                lhs = point_power(x, b)
                rhs = sum(r * point_power(x, m) for r, m in zip(red, model.normal_set))
                rel = abs(lhs - rhs) / (1.0 + abs(lhs) + abs(rhs))
                residual = max(residual, rel)
        if residual > tol:
            raise ResidualTooLarge(f"model relations violated to {residual:.2e}")
        try:
            pts = PointSet(n, points)
        except ValueError as exc:
            raise EigenFailure(f"recovered points collide: {exc}") from exc
        return ZeroLocus(pts, False, residual)
    raise EigenFailure("no usable eigendecomposition")


# rational spectra


def _eval_desc(coeffs, x):
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _primitive_int(coeffs):
    from math import gcd, lcm

    den = 1
    for c in coeffs:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _divisors(v):
    v = abs(v)
    out = []
    i = 1
    while i * i <= v:
        if v % i == 0:
            out.append(i)
            if i != v // i:
                out.append(v // i)
        i += 1
    return sorted(out)


def _deflate(coeffs, r):
    """Exact synthetic division of a descending coefficient list by (x - r)."""
    out = [Fraction(coeffs[0])]
    for c in coeffs[1:-1]:
        out.append(Fraction(c) + out[-1] * r)
    return _primitive_int(out)


def _taylor_shift(coeffs, center):
    """Exact descending coefficients of p(X + center) for integer inputs."""
    out = list(coeffs)
    n = len(out)
    for i in range(1, n):
        for j in range(1, n - i + 1):
            out[j] += out[j - 1] * center
    return out


def _small_degree_roots(coeffs):
    """All rational roots of a primitive integer poly of degree <= 2, exactly.

    The quadratic formula with an integer square root decides splitness at
    any coefficient size, which float estimates cannot once two roots sit
    closer together than the float spacing at their magnitude.
    """
    if len(coeffs) == 2:
        return [Fraction(-coeffs[1], coeffs[0])]
    a, b, c = coeffs
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    s = math.isqrt(disc)
    if s * s != disc:
        return []
    return sorted([Fraction(-b - s, 2 * a), Fraction(-b + s, 2 * a)])


def _numeric_candidates(coeffs):
    big = max(abs(c) for c in coeffs)
    arr = np.array([float(Fraction(c, big)) for c in coeffs])
    found = []
    for roots, reciprocal in ((np.roots(arr), False), (np.roots(arr[::-1]), True)):
        for z in roots:
            if abs(z.imag) > 1e-6 * (1.0 + abs(z.real)) or z.real == 0 and reciprocal:
                continue
            x = 1.0 / z.real if reciprocal else z.real
            if np.isfinite(x):
                found.append(x)
    return found


def _eval_float(coeffs, x):
    acc = 0.0
    for c in coeffs:
        acc = acc * x + float(c)
    return acc


def _polish(coeffs, seed):
    """Refine a root estimate, then snap to nearby small-denominator rationals.

    Float Newton first (cheap), then at most four exact steps; each exact step
    doubles the trustworthy digits and the iterate is re-snapped so integer
    sizes stay bounded even when the nearby root is irrational.  Returns a
    verified rational root or None.
    """
    deg = len(coeffs) - 1
    deriv = [c * (deg - i) for i, c in enumerate(coeffs[:-1])]
    x = float(seed)
    for _ in range(60):
        fv = _eval_float(coeffs, x)
        dv = _eval_float(deriv, x)
        if not math.isfinite(fv) or not math.isfinite(dv) or dv == 0.0:
            break
        x -= fv / dv
        if abs(fv) <= 1e-300:
            break
    if not math.isfinite(x):
        return None
    cand = Fraction(x)
    for _ in range(4):
        for snapped in (
            Fraction(round(cand)),
            cand.limit_denominator(10**6),
            cand.limit_denominator(10**12),
            cand.limit_denominator(10**18),
        ):
            if _eval_desc(coeffs, snapped) == 0:
                return snapped
        fv = _eval_desc(coeffs, cand)
        if fv == 0:
            return cand
        dv = _eval_desc(deriv, cand)
        if dv == 0:
            return None
        cand = (cand - fv / dv).limit_denominator(10**40)
    return None


def _find_rational_root(coeffs, depth=3):
    """Smallest verified rational root of a primitive integer polynomial."""
    if len(coeffs) <= 3:
        small = _small_degree_roots(coeffs)
        return small[0] if small else None
    candidates = set()
    a_lead, a_const = coeffs[0], coeffs[-1]
    if abs(a_const) <= 10**6 and abs(a_lead) <= 10**4:
        for p in _divisors(a_const):
            for q in _divisors(a_lead):
                candidates.add(Fraction(p, q))
                candidates.add(Fraction(-p, q))
    estimates = _numeric_candidates(coeffs)
    for x in estimates:
        for bound in (10**6, 10**12, 10**18):
            root = _polish(coeffs, Fraction(x).limit_denominator(bound))
            if root is not None:
                candidates.add(root)
                break
    if not candidates and depth > 0:
        # roots clustered at a large magnitude defeat float refinement (the
        # spacing of floats there exceeds the gap); recenter the polynomial
        # at each rounded estimate exactly and retry on the shifted copy
        centers = {int(round(x)) for x in estimates if 10**9 <= abs(x) < 10**300}
        for center in sorted(centers):
            shifted = _primitive_int(_taylor_shift(coeffs, center))
            sub = _find_rational_root(shifted, depth - 1)
            if sub is not None:
                candidates.add(sub + center)
    verified = sorted(r for r in candidates if _eval_desc(coeffs, r) == 0)
    return verified[0] if verified else None


def rational_roots(p):
    """All rational roots of a univariate polynomial, with multiplicity.

    Returns (roots ascending, fully_split).  Numeric estimates only ever
    suggest candidates; every root is verified and deflated exactly, so a
    numeric miss can cost completeness (reported via the flag) but never
    correctness.
    """
    if p.n != 1 or p.is_zero:
        raise ValueError("rational_roots needs a nonzero univariate polynomial")
    deg = max(a[0] for a in p.terms)
    coeffs = _primitive_int([p.coeff((deg - i,)) for i in range(deg + 1)])
    roots = []
    while len(coeffs) > 1 and coeffs[-1] == 0:
        roots.append(Fraction(0))
        coeffs = coeffs[:-1]
    while len(coeffs) > 3:
        r = _find_rational_root(coeffs)
        if r is None:
            return sorted(roots), False
        roots.append(r)
        coeffs = _deflate(coeffs, r)
    if len(coeffs) > 1:
        roots.extend(_small_degree_roots(coeffs))
    return sorted(roots), len(roots) == deg
