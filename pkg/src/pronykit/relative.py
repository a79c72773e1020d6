"""Reconstruction relative to a known algebraic set.

When the support is promised to lie on Y = Z(g_1..g_k), columns indexed by
monomials that reduce to other columns modulo the ideal are redundant; the
structured matrix shrinks to the standard monomials, and the locus step
adjoins the generators to the kernel before modeling.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import (
    DegreeExhausted,
    DegreeInsufficient,
    DegreeLeak,
    NotGroebner,
    NotZeroDimensional,
    RepeatedEigenvalues,
    VerificationFailed,
)
from .linalg import Matrix, rank
from .poly import IndexFamily, MonomialOrder, Poly, normal_form, s_polynomial
from .prony import (
    _VERIFY_EXTRAS,
    PronyOutcome,
    PronyStructureSpec,
    coefficient_solve,
    degree_for_rank,
)
from .vanish import PointSet, VanishingSpace, point_power
from .zerodim import quotient_model, zero_locus_exact

_BUCHBERGER_LIMIT = 4


class AlgebraicSet:
    """Zero set of a supplied (reduced) Groebner basis.

    Leading terms must be pairwise non-dividing; for up to four generators
    the Buchberger criterion is verified outright, beyond that the claim is
    trusted.
    """

    __slots__ = ("n", "order", "generators")

    def __init__(self, n, generators, order=None):
        self.n = int(n)
        self.order = order or MonomialOrder()
        gens = []
        for g in generators:
            if not isinstance(g, Poly) or g.n != self.n:
                raise ValueError(f"generator {g!r} is not a polynomial in {self.n} variables")
            if g.is_zero:
                raise ValueError("zero generator")
            gens.append(g)
        self.generators = tuple(gens)
        lts = [g.leading_term(self.order)[0] for g in self.generators]
        for i in range(len(lts)):
            for j in range(len(lts)):
                if i != j and all(a <= b for a, b in zip(lts[i], lts[j])):
                    raise NotGroebner(
                        f"leading term {lts[i]} divides {lts[j]}: basis is not reduced"
                    )
        if 2 <= len(self.generators) <= _BUCHBERGER_LIMIT:
            for i in range(len(self.generators)):
                for j in range(i + 1, len(self.generators)):
                    s = s_polynomial(self.generators[i], self.generators[j], self.order)
                    if not normal_form(s, self.generators, self.order).is_zero:
                        raise NotGroebner(
                            f"S-polynomial of generators {i + 1}, {j + 1} does not reduce"
                        )

    def __repr__(self):
        return f"AlgebraicSet(n={self.n}, {len(self.generators)} generators)"


class CoordinateBasis:
    """Standard monomials of a degree set modulo the ideal, with reductions."""

    __slots__ = ("degrees", "standard", "reduction")

    def __init__(self, degrees, standard, reduction):
        self.degrees = tuple(degrees)
        self.standard = tuple(standard)
        self.reduction = dict(reduction)

    def __repr__(self):
        return f"CoordinateBasis({len(self.standard)} of {len(self.degrees)})"


def coordinate_basis(Y, degrees):
    """Split a degree set into standard monomials and reduced columns.

    Every monomial's normal form must stay supported inside the degree set;
    anything else means the set cannot carry the relative structure at this
    degree (DegreeLeak).
    """
    order = Y.order
    degree_list = order.sort(set(degrees))
    degree_set = set(degree_list)
    standard = []
    reduction = {}
    for alpha in degree_list:
        nf = normal_form(Poly.monomial(Y.n, alpha), Y.generators, order)
        if nf.terms.keys() - degree_set:
            raise DegreeLeak(
                f"normal form of {alpha} leaves the degree set: {sorted(nf.terms)}"
            )
        reduction[alpha] = nf
        if nf == Poly.monomial(Y.n, alpha):
            standard.append(alpha)
    return CoordinateBasis(degree_list, standard, reduction)


def _as_family(column_family, n):
    if isinstance(column_family, str):
        return IndexFamily(column_family, n)
    return column_family


def relative_hankel(
    d, oracle, Y, column_family="total", row_family=None, row_lag=1, order=None
):
    """Hankel matrix with columns restricted to the standard monomials."""
    order = order or Y.order
    n = Y.n
    cf = _as_family(column_family, n)
    rf = _as_family(row_family, n) if row_family is not None else cf
    basis = coordinate_basis(Y, cf.members(d, order))
    row_degree = d if d == 0 else max(d - row_lag, 0)
    rows = rf.members(row_degree, order)
    cols = order.sort(basis.standard)
    oracle.ensure(
        sorted({tuple(a + b for a, b in zip(r, c)) for r in rows for c in cols})
    )
    return Matrix(
        [[oracle(tuple(a + b for a, b in zip(r, c))) for c in cols] for r in rows],
        ncols=len(cols),
        row_labels=rows,
        col_labels=cols,
    )


def relative_hankel_square(d, oracle, Y, column_family="total", order=None):
    """Square variant: rows and columns both run over the standard monomials."""
    order = order or Y.order
    cf = _as_family(column_family, Y.n)
    basis = coordinate_basis(Y, cf.members(d, order))
    cols = order.sort(basis.standard)
    oracle.ensure(
        sorted({tuple(a + b for a, b in zip(r, c)) for r in cols for c in cols})
    )
    return Matrix(
        [[oracle(tuple(a + b for a, b in zip(r, c))) for c in cols] for r in cols],
        ncols=len(cols),
        row_labels=cols,
        col_labels=cols,
    )


def _combined_space(kernel_polys, Y, degrees):
    """Degree-bounded span of the kernel plus the ideal of Y.

    Multipliers stay inside the degree set (an order ideal: any monomial
    keeping the product inside lies in it, since m divides m + alpha).  The
    span never invents zeros; for the sets in scope it is the full degree
    part of the sum ideal.
    """
    order = Y.order
    labels = order.sort(set(degrees))
    degree_set = set(labels)
    polys = [p for p in list(kernel_polys) + list(Y.generators) if p and not p.is_zero]
    span = []
    for q in polys:
        for m in labels:
            prod = q.shift(m)
            if not prod.terms.keys() - degree_set:
                span.append(prod)
    return VanishingSpace(Y.n, labels, span, order)


def _check_on_ideal(polys, Y, points):
    for p in list(polys) + list(Y.generators):
        for x in points:
            if p.evaluate(x) != 0:
                raise DegreeInsufficient(
                    f"recovered point {x} misses the input ideal; degree too small"
                )


def relative_zero_locus(kernel_polys, Y, degrees, rng=None):
    """Common zeros of the kernel polynomials on Y, within the degree window."""
    rng = rng or random.Random(0)
    space = _combined_space(kernel_polys, Y, degrees)
    model = quotient_model(space, Y.order)
    locus = zero_locus_exact(model, rng)
    _check_on_ideal(kernel_polys, Y, locus.points)
    return locus.points


def _relative_solve(d, oracle, Y, square, cf, row_lag, rng):
    if square:
        matrix = relative_hankel_square(d, oracle, Y, cf)
    else:
        matrix = relative_hankel(d, oracle, Y, cf, row_lag=row_lag)
    space = VanishingSpace.from_kernel(matrix, Y.order)
    combined = _combined_space(space.basis, Y, cf.members(d, Y.order))
    model = quotient_model(combined, Y.order)
    locus = zero_locus_exact(model, rng)
    _check_on_ideal(space.basis, Y, locus.points)
    return matrix, model, locus


def hankel_probe_spec(n, column_family):
    """Column-only stand-in so degree selection can reuse the ordinary rule."""
    cf = _as_family(column_family, n)
    return PronyStructureSpec(
        "probe", n, "nat", cf, cf, 1, None, lambda s, d, o: None, lambda s, d: []
    )


def run_relative_pipeline(
    Y,
    oracle,
    rank_bound=None,
    max_degree=12,
    seed=0,
    square=False,
    column_family="total",
    row_lag=1,
):
    """Reconstruction with support promised on Y; exact scalars only."""
    rng = random.Random(seed)
    cf = _as_family(column_family, Y.n)

    def build(d):
        if square:
            return relative_hankel_square(d, oracle, Y, cf)
        return relative_hankel(d, oracle, Y, cf, row_lag=row_lag)

    if rank_bound is not None:
        d = degree_for_rank(hankel_probe_spec(Y.n, cf), rank_bound)
        matrix, model, locus = _relative_solve(d, oracle, Y, square, cf, row_lag, rng)
        mode = "rank_bound"
    else:
        found = None
        for d in range(max_degree):
            if rank(build(d)) == rank(build(d + 1)):
                try:
                    found = (d, *_relative_solve(d, oracle, Y, square, cf, row_lag, rng))
                    break
                except (DegreeInsufficient, NotZeroDimensional, RepeatedEigenvalues):
                    continue
        if found is None:
            raise DegreeExhausted(f"no stable degree up to {max_degree}")
        d, matrix, model, locus = found
        mode = "stabilized"

    points = sorted(locus.points)
    coeffs = coefficient_solve(points, oracle, model.normal_set)
    pairs = [(x, c) for x, c in zip(points, coeffs) if c]
    evaluation_count = oracle.evaluations

    grid = list(matrix.col_labels)
    span = 2 * d + 5
    grid += [tuple(rng.randrange(span) for _ in range(Y.n)) for _ in range(_VERIFY_EXTRAS)]
    for gamma in grid:
        predicted = sum((c * point_power(x, gamma) for x, c in pairs), start=Fraction(0))
        if predicted != oracle(gamma):
            raise VerificationFailed(f"reconstruction disagrees at index {gamma}")

    return PronyOutcome(
        PointSet(Y.n, [x for x, _ in pairs]),
        [c for _, c in pairs],
        d,
        mode,
        True,
        evaluation_count,
    )
