"""Vanishing ideals of finite point sets: evaluation matrices, kernels,
and the ascending-order interpolation construction of a Groebner basis.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotDistinguished, NotSurjective
from .linalg import Matrix, kernel_basis, solve_square
from .poly import MonomialOrder, Poly, border, is_distinguished, normal_form


def point_power(x, alpha):
    """x^alpha for a point tuple; negative entries mean reciprocals."""
    out = Fraction(1) if isinstance(x[0], (Fraction, int)) else 1.0
    for base, a in zip(x, alpha):
        if a:
            out *= base**a
    return out


class PointSet:
    """Duplicate-free ordered list of points in K^n."""

    __slots__ = ("n", "points")

    def __init__(self, n, points):
        pts = tuple(tuple(p) for p in points)
        for p in pts:
            if len(p) != n:
                raise ValueError(f"point {p} has length {len(p)}, expected {n}")
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points")
        self.n = n
        self.points = pts

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __contains__(self, p):
        return tuple(p) in set(self.points)

    def __eq__(self, other):
        # support comparisons are set comparisons; serialization sorts
        return (
            isinstance(other, PointSet)
            and self.n == other.n
            and set(self.points) == set(other.points)
        )

    def __repr__(self):
        return f"PointSet(n={self.n}, {list(self.points)!r})"


def vandermonde(D, X, order=None):
    """Evaluation matrix: rows follow X, columns are D ascending in order."""
    order = order or MonomialOrder()
    cols = order.sort(set(D))
    points = list(X)
    return Matrix(
        [[point_power(x, alpha) for alpha in cols] for x in points],
        ncols=len(cols),
        row_labels=points,
        col_labels=cols,
    )


class VanishingSpace:
    """A labeled subspace of the polynomials supported on a degree set."""

    __slots__ = ("n", "degrees", "basis", "order")

    def __init__(self, n, degrees, basis, order):
        self.n = n
        self.degrees = tuple(degrees)
        self.basis = tuple(basis)
        self.order = order

    @classmethod
    def from_kernel(cls, matrix, order):
        """Kernel of a column-labeled matrix, one polynomial per basis vector."""
        labels = matrix.col_labels
        if labels is None:
            raise ValueError("matrix has no column labels")
        n = len(labels[0]) if labels else 1
        vecs = kernel_basis(matrix)
        polys = [Poly.from_vector(n, labels, v) for v in vecs]
        return cls(n, labels, polys, order)

    def __repr__(self):
        return f"VanishingSpace(dim={len(self.basis)}, |D|={len(self.degrees)})"


def vanishing_space(D, X, order=None):
    """All polynomials supported on D that vanish on X, as a canonical basis."""
    order = order or MonomialOrder()
    V = vandermonde(D, X, order)
    return VanishingSpace.from_kernel(V, order)


class MoellerBasis:
    """Output of the interpolation construction on a finite point set."""

    __slots__ = ("groebner", "normal_set", "degrees", "border_set", "order")

    def __init__(self, groebner, normal_set, degrees, border_set, order):
        self.groebner = tuple(groebner)
        self.normal_set = tuple(normal_set)
        self.degrees = tuple(degrees)
        self.border_set = tuple(border_set)
        self.order = order

    def __repr__(self):
        return f"MoellerBasis(|G|={len(self.groebner)}, |C|={len(self.normal_set)})"


def moeller_basis(X, D, order=None):
    """Groebner basis of the ideal of X from evaluations on the degree set D.

    Walks D in ascending order collecting the monomials whose evaluation
    vectors are independent (the normal set C); every other monomial of
    D and its border gets the interpolant of its evaluation vector over C
    subtracted, which makes it a basis element with that leading term.

    D must be distinguished for the leading-term claim, and the evaluation
    map on D must reach all of K^X so the interpolants exist.
    """
    order = order or MonomialOrder()
    n = X.n
    D_set = set(D)
    if not is_distinguished(D_set, n, order):
        raise NotDistinguished(f"degree set is not an initial segment: {sorted(D_set)}")
    bd = border(D_set, n)
    D_asc = order.sort(D_set)

    points = list(X)
    normal = []
    echelon = []
    for t in D_asc:
        if len(normal) == len(points):
            break
        vec = [point_power(x, t) for x in points]
        for piv, row in echelon:
            c = vec[piv]
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
        piv = next((i for i, a in enumerate(vec) if a), None)
        if piv is not None:
            normal.append(t)
            inv = Fraction(1) / vec[piv]
            echelon.append((piv, [a * inv for a in vec]))
    if len(normal) < len(points):
        raise NotSurjective(
            f"evaluations on {len(D_set)} monomials span only "
            f"{len(normal)} of {len(points)} dimensions"
        )

    targets = order.sort((D_set | bd) - set(normal))
    A = Matrix([[point_power(x, s) for s in normal] for x in points], ncols=len(normal))
    basis = []
    for t in targets:
        rhs = [point_power(x, t) for x in points]
        lam = solve_square(A, rhs)
        g = Poly.monomial(n, t) - Poly(n, zip(normal, lam))
        basis.append(g)
    return MoellerBasis(basis, normal, D_asc, order.sort(bd), order)


def stabilization_bound(X):
    """Degree at which the point-set construction is always surjective."""
    return len(X)


def ideal_membership(p, basis):
    """Exact membership via normal form against a Groebner basis."""
    return normal_form(p, basis.groebner, basis.order).is_zero
