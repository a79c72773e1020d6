"""Concrete structured families and sample generators.

Hankel over additive index pairs, Toeplitz over signed differences, the
Chebyshev-basis variant (a Hankel-plus-Toeplitz fold times a basis change),
operator pullbacks, Gaussian mixtures of exponentials, and the label
decoders that turn recovered support points back into model answers.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .arith import integer_log
from .errors import (
    DecodeFailure,
    DomainMismatch,
    NonCommuting,
    SpecInvalid,
    ZeroDirection,
)
from .linalg import Matrix
from .poly import IndexFamily, MonomialOrder, exponent, minkowski_diff, minkowski_sum
from .prony import PronyStructureSpec, SampleOracle, monomial_atom
from .vanish import PointSet, point_power


def _family(fam, n):
    return IndexFamily(fam, n) if isinstance(fam, str) else fam


# Hankel


def _hankel_plan(spec, d):
    return sorted(minkowski_sum(spec.rows(d), spec.columns(d)))


def hankel_builder(spec, d, oracle):
    rows = spec.rows(d)
    cols = spec.columns(d)
    oracle.ensure(spec.plan(d))
    return Matrix(
        [[oracle(tuple(a + b for a, b in zip(r, c))) for c in cols] for r in rows],
        ncols=len(cols),
        row_labels=rows,
        col_labels=cols,
    )


def hankel_structure(
    n,
    domain="nat",
    column_family="total",
    row_family=None,
    row_lag=1,
    order=None,
    exact=True,
    name="hankel",
):
    cf = _family(column_family, n)
    rf = _family(row_family, n) if row_family is not None else cf
    return PronyStructureSpec(
        name, n, domain, cf, rf, row_lag, order, hankel_builder, _hankel_plan,
        monomial_atom, exact,
    )


# Toeplitz


def _toeplitz_plan(spec, d):
    return sorted(minkowski_diff(spec.columns(d), spec.rows(d)))


def toeplitz_builder(spec, d, oracle):
    if oracle.domain != "int":
        raise DomainMismatch("signed-difference structure needs a Z^n oracle")
    rows = spec.rows(d)
    cols = spec.columns(d)
    oracle.ensure(spec.plan(d))
    return Matrix(
        [[oracle(tuple(b - a for a, b in zip(r, c))) for c in cols] for r in rows],
        ncols=len(cols),
        row_labels=rows,
        col_labels=cols,
    )


def toeplitz_structure(
    n,
    column_family="total",
    row_family=None,
    row_lag=0,
    order=None,
    exact=True,
):
    cf = _family(column_family, n)
    rf = _family(row_family, n) if row_family is not None else cf
    return PronyStructureSpec(
        "toeplitz", n, "int", cf, rf, row_lag, order, toeplitz_builder,
        _toeplitz_plan, monomial_atom, exact,
    )


# Chebyshev basis


def chebyshev_value(k, x):
    """T_k(x) by the three-term recurrence; works for Fraction and float."""
    if k == 0:
        return x**0
    prev, cur = x**0, x
    for _ in range(k - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def chebyshev_atom(gamma, x):
    return chebyshev_value(gamma[0], x[0])


def cheb_linearize(i, j):
    """Product rule T_i T_j = (T_{i+j} + T_{|i-j|}) / 2, merged."""
    out = {}
    for k in (i + j, abs(i - j)):
        out[k] = out.get(k, Fraction(0)) + Fraction(1, 2)
    return sorted(out.items())


def monomial_to_chebyshev(j):
    """Coordinates of X^j over the Chebyshev basis, as {index: coeff}."""
    cur = {0: Fraction(1)}
    for _ in range(j):
        nxt = {}
        for i, c in cur.items():
            for k, w in cheb_linearize(1, i):
                nxt[k] = nxt.get(k, Fraction(0)) + c * w
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def chebyshev_psi(d):
    """(d+1) x (d+1) basis change: column j holds X^j over T_0..T_d."""
    cols = [monomial_to_chebyshev(j) for j in range(d + 1)]
    return Matrix(
        [[cols[j].get(k, Fraction(0)) for j in range(d + 1)] for k in range(d + 1)],
        ncols=d + 1,
    )


def _chebyshev_plan(spec, d):
    top = spec.row_degree(d) + d
    return [(k,) for k in range(top + 1)]


def chebyshev_unfolded(d, oracle, row_lag=1):
    """Pre-basis-change matrix: entry (i, j) is f(i+j) + f(|i-j|)."""
    row_degree = d if d == 0 else max(d - row_lag, 0)
    rows = [(i,) for i in range(row_degree + 1)]
    oracle.ensure([(k,) for k in range(row_degree + d + 1)])
    return Matrix(
        [
            [oracle((i[0] + j,)) + oracle((abs(i[0] - j),)) for j in range(d + 1)]
            for i in rows
        ],
        ncols=d + 1,
        row_labels=rows,
        col_labels=[(j,) for j in range(d + 1)],
    )


def chebyshev_builder(spec, d, oracle):
    rows = spec.rows(d)
    cols = [(j,) for j in range(d + 1)]
    oracle.ensure(spec.plan(d))
    folded = chebyshev_unfolded(d, oracle, spec.row_lag)
    product = folded @ chebyshev_psi(d)
    return Matrix(product.rows, ncols=d + 1, row_labels=rows, col_labels=cols)


def chebyshev_structure(row_lag=1, order=None, exact=True):
    fam = IndexFamily("total", 1)
    return PronyStructureSpec(
        "chebyshev", 1, "nat", fam, fam, row_lag, order, chebyshev_builder,
        _chebyshev_plan, chebyshev_atom, exact,
    )


def evaluation_count(spec, d):
    """Distinct oracle queries the degree-d build needs."""
    return len(spec.plan(d))


# generators


def first_primes(n):
    out = []
    candidate = 2
    while len(out) < n:
        if all(candidate % p for p in out):
            out.append(candidate)
        candidate += 1
    return out


def expsum_oracle(n, domain, terms):
    """f(alpha) = sum of coeff * base^alpha; bases must be nonzero on Z^n."""
    merged = {}
    for coeff, base in terms:
        base = tuple(Fraction(b) for b in base)
        if len(base) != n:
            raise SpecInvalid(f"base {base} has length {len(base)}, expected {n}")
        if domain == "int" and any(b == 0 for b in base):
            raise SpecInvalid("zero base coordinate on a signed lattice")
        merged[base] = merged.get(base, Fraction(0)) + Fraction(coeff)
    clean = [(c, b) for b, c in merged.items() if c]

    def f(idx):
        return sum((c * point_power(b, idx) for c, b in clean), start=Fraction(0))

    return SampleOracle(n, domain, f)


def polynomial_to_expsum(n, terms, bases=None):
    """Sparse polynomial p -> the sample sequence p(b1^k1, ..., bn^kn).

    Each monomial exponent alpha becomes an exponential term with base
    vector (b_i^{alpha_i}); distinct monomials must get distinct labels.
    """
    bases = tuple(Fraction(b) for b in (bases or first_primes(n)))
    if len(bases) != n:
        raise SpecInvalid(f"{len(bases)} bases for {n} variables")
    if any(b == 0 for b in bases):
        raise SpecInvalid("zero base")
    labels = {}
    out = []
    for alpha, coeff in terms.items():
        alpha = exponent(alpha)
        label = tuple(b**a for b, a in zip(bases, alpha))
        if labels.setdefault(label, alpha) != alpha:
            raise SpecInvalid(f"monomials {labels[label]} and {alpha} collide at {label}")
        out.append((Fraction(coeff), label))
    return out, bases


def polynomial_oracle(n, terms, bases=None, domain="nat"):
    expterms, bases = polynomial_to_expsum(n, terms, bases)
    return expsum_oracle(n, domain, expterms), bases


def kronecker_oracle(n, terms, degree_bound, base=Fraction(2)):
    """Univariate fold: alpha -> sum alpha_i * D^i with D = degree_bound + 1."""
    D = int(degree_bound) + 1
    folded = {}
    for alpha, coeff in terms.items():
        alpha = exponent(alpha)
        if any(a < 0 or a >= D for a in alpha):
            raise SpecInvalid(f"exponent {alpha} outside the Kronecker box {D}")
        k = sum(a * D**i for i, a in enumerate(alpha))
        folded[(k,)] = folded.get((k,), Fraction(0)) + Fraction(coeff)
    expterms = [(c, (Fraction(base) ** alpha[0],)) for alpha, c in folded.items()]
    return expsum_oracle(1, "nat", expterms)


def chebsum_oracle(terms):
    """f(i) = sum of coeff * T_i(point) for rational points."""
    clean = [(Fraction(c), Fraction(b)) for c, b in terms]

    def f(idx):
        return sum(
            (c * chebyshev_value(idx[0], b) for c, b in clean), start=Fraction(0)
        )

    return SampleOracle(1, "nat", f)


def chebpoly_oracle(terms, base=Fraction(2)):
    """Univariate sparse polynomial sampled along the Chebyshev flow.

    Monomial coefficients p give f(i) = p(T_i(base)).  Rewriting p over the
    Chebyshev basis and using the nesting identity T_j(T_i) = T_{ij} =
    T_i(T_j), f becomes sum q_j T_i(T_j(base)): support labels T_j(base)
    carrying p's Chebyshev coordinates q as coefficients.
    """
    base = Fraction(base)
    if base <= 1:
        raise SpecInvalid("Chebyshev transfer needs base > 1 for distinct labels")
    cheb = {}
    for j, c in terms.items():
        j = int(j[0]) if isinstance(j, (tuple, list)) else int(j)
        for k, w in monomial_to_chebyshev(j).items():
            cheb[k] = cheb.get(k, Fraction(0)) + Fraction(c) * w
    return chebsum_oracle(
        [(c, chebyshev_value(k, base)) for k, c in sorted(cheb.items()) if c]
    )


def gaussian_oracle(A_rows, terms):
    """Mixture of shifted Gaussians, sampled through the exponential lens.

    A is symmetric positive definite and rational; terms are (weight,
    center) with float semantics.  The sample at alpha is
    sum of weight * exp(-t.A.t + 2 t.A.alpha), the numerically stable form
    of weight-at-center times base^alpha with base_j = exp(2 (A t)_j).
    """
    A = [[Fraction(x) for x in row] for row in A_rows]
    n = len(A)
    if any(len(row) != n for row in A):
        raise SpecInvalid("A must be square")
    if any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise SpecInvalid("A must be symmetric")
    for k in range(1, n + 1):
        if _det([row[:k] for row in A[:k]]) <= 0:
            raise SpecInvalid("A must be positive definite")
    parsed = []
    for weight, center in terms:
        center = tuple(float(c) for c in center)
        if len(center) != n:
            raise SpecInvalid(f"center {center} has length {len(center)}, expected {n}")
        parsed.append((float(weight), center))
    Af = [[float(x) for x in row] for row in A]

    def f(idx):
        total = 0.0
        for w, t in parsed:
            At = [sum(Af[i][j] * t[j] for j in range(n)) for i in range(n)]
            quad = sum(t[i] * At[i] for i in range(n))
            lin = sum(At[i] * idx[i] for i in range(n))
            total += w * math.exp(-quad + 2.0 * lin)
        return total

    return SampleOracle(n, "nat", f)


def _det(rows):
    if len(rows) == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(len(rows)):
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def operator_oracle(phis, delta, start):
    """Pullback f(alpha) = delta(phi^alpha start) for commuting matrices."""
    mats = [m if isinstance(m, Matrix) else Matrix(m) for m in phis]
    n = len(mats)
    dim = mats[0].nrows
    for m in mats:
        if m.nrows != dim or m.ncols != dim:
            raise SpecInvalid("operators must be square and equal-sized")
    for i in range(n):
        for j in range(i + 1, n):
            if mats[i] @ mats[j] != mats[j] @ mats[i]:
                raise NonCommuting(f"operators {i + 1} and {j + 1} do not commute")
    delta = [Fraction(x) for x in delta]
    start_vec = [Fraction(x) for x in start]
    if len(delta) != dim or len(start_vec) != dim:
        raise SpecInvalid("functional/start vector dimension mismatch")

    vectors = {(0,) * n: start_vec}

    def vec_for(alpha):
        known = vectors.get(alpha)
        if known is not None:
            return known
        i = next(k for k, a in enumerate(alpha) if a > 0)
        down = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1 :]
        v = mats[i].matvec(vec_for(down))
        vectors[alpha] = v
        return v

    def f(idx):
        v = vec_for(idx)
        return sum(d * x for d, x in zip(delta, v))

    return SampleOracle(n, "nat", f)


def projection_oracle(oracle, direction):
    """Univariate restriction k -> f(k * direction)."""
    direction = exponent(direction)
    if len(direction) != oracle.n:
        raise ValueError(f"direction {direction} has length {len(direction)}, expected {oracle.n}")
    if all(a == 0 for a in direction):
        raise ZeroDirection("projection along the zero vector")
    if oracle.domain == "nat" and any(a < 0 for a in direction):
        raise ValueError("negative direction on a natural lattice")

    def f(idx):
        return oracle(tuple(idx[0] * a for a in direction))

    return SampleOracle(1, oracle.domain, f)


# decoders


def decode_monomial_support(points, bases):
    """Invert per-coordinate power labels back to exponent tuples."""
    bases = tuple(Fraction(b) for b in bases)
    out = []
    for pt in points:
        alpha = []
        for coord, b in zip(pt, bases):
            k = integer_log(coord, b)
            if k is None:
                raise DecodeFailure(
                    f"coordinate {coord} is not a natural power of {b}"
                )
            alpha.append(k)
        out.append(tuple(alpha))
    return out


def decode_chebyshev_support(points, base=Fraction(2)):
    """Match labels against the increasing sequence T_j(base)."""
    base = Fraction(base)
    out = []
    for pt in points:
        label = pt[0]
        j = 0
        while True:
            val = chebyshev_value(j, base)
            if val == label:
                out.append(j)
                break
            if val > label:
                raise DecodeFailure(f"{label} is not T_j({base}) for any j")
            j += 1
    return out


def decode_kronecker(points, degree_bound, n, base=Fraction(2)):
    D = int(degree_bound) + 1
    ks = decode_monomial_support(points, (base,))
    out = []
    for (k,) in ks:
        digits = []
        for _ in range(n):
            digits.append(k % D)
            k //= D
        if k:
            raise DecodeFailure("folded label outside the Kronecker box")
        out.append(tuple(digits))
    return out


def decode_gaussian(A_rows, points, coefficients):
    """Centers and weights from exponential labels: t = A^{-1} log(b) / 2."""
    import numpy as np

    A = np.array([[float(x) for x in row] for row in A_rows])
    n = A.shape[0]
    centers = []
    weights = []
    for pt, c in zip(points, coefficients):
        if any(x <= 0 for x in pt):
            raise DecodeFailure(f"label {pt} has a non-positive coordinate")
        z = np.array([math.log(float(x)) for x in pt])
        t = np.linalg.solve(A, z) / 2.0
        quad = float(t @ A @ t)
        centers.append(tuple(float(v) for v in t))
        weights.append(float(c) * math.exp(quad))
    return centers, weights


def support_to_answer(kind, points, **payload):
    if kind == "monomial":
        return decode_monomial_support(points, payload["bases"])
    if kind == "chebyshev":
        return decode_chebyshev_support(points, payload.get("base", Fraction(2)))
    if kind == "kronecker":
        return decode_kronecker(
            points, payload["degree_bound"], payload["n"], payload.get("base", Fraction(2))
        )
    if kind == "gaussian":
        return decode_gaussian(payload["A"], points, payload["coefficients"])
    raise ValueError(f"unknown label map {kind!r}")


# the classic counterexample family


def _quasi_builder(spec, d, oracle):
    rows = spec.rows(d)
    cols = spec.columns(d)
    return Matrix(
        [
            [Fraction(1) if i == j else Fraction(0) for j in range(len(cols))]
            for i in range(len(rows))
        ],
        ncols=len(cols),
        row_labels=rows,
        col_labels=cols,
    )


def quasi_structure_example():
    """A family that pins the support's locus without the vanishing ideal.

    The degree-d matrix is the identity block, so its kernel is spanned by
    X^d alone: the zero locus is {0}, matching the support of f = 0^k, yet
    X itself vanishes on the support and is not in the kernel once d >= 2.
    """
    fam = IndexFamily("total", 1)
    spec = PronyStructureSpec(
        "quasi", 1, "nat", fam, fam, 1, MonomialOrder(), _quasi_builder,
        lambda s, d: [], monomial_atom, True,
    )
    oracle = expsum_oracle(1, "nat", [(Fraction(1), (Fraction(0),))])
    support = PointSet(1, [(Fraction(0),)])
    return spec, oracle, support
