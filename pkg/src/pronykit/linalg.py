"""Dense exact linear algebra: RREF, kernels, square solves, char poly.

Everything here assumes exact scalars (Fraction or int).  The approximate
pipeline uses numpy directly and never calls into this module for rank
decisions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import Singular


class Matrix:
    """Row-major dense matrix with optional row/column labels.

    Labels carry the exponent indexing of structured matrices through the
    pipeline; they are inert for the arithmetic.
    """

    __slots__ = ("rows", "_ncols", "row_labels", "col_labels")

    def __init__(self, rows, ncols=None, row_labels=None, col_labels=None):
        self.rows = [list(r) for r in rows]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged rows")
        if widths:
            self._ncols = widths.pop()
            if ncols is not None and ncols != self._ncols:
                raise ValueError("ncols disagrees with row width")
        elif ncols is not None:
            self._ncols = int(ncols)
        elif col_labels is not None:
            self._ncols = len(col_labels)
        else:
            self._ncols = 0
        self.row_labels = None if row_labels is None else tuple(row_labels)
        self.col_labels = None if col_labels is None else tuple(col_labels)
        if self.row_labels is not None and len(self.row_labels) != len(self.rows):
            raise ValueError("row label count mismatch")
        if self.col_labels is not None and len(self.col_labels) != self._ncols:
            raise ValueError("column label count mismatch")

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return self._ncols

    @classmethod
    def identity(cls, k, one=Fraction(1), zero=Fraction(0)):
        return cls([[one if i == j else zero for j in range(k)] for i in range(k)], ncols=k)

    def transpose(self):
        return Matrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
            row_labels=self.col_labels,
            col_labels=self.row_labels,
        )

    def matvec(self, vec):
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        return [sum(r[j] * vec[j] for j in range(self.ncols)) for r in self.rows]

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        cols = other.ncols
        return Matrix(
            [
                [sum(r[k] * other.rows[k][j] for k in range(self.ncols)) for j in range(cols)]
                for r in self.rows
            ],
            ncols=cols,
        )

    def scale(self, c):
        return Matrix([[c * x for x in r] for r in self.rows], ncols=self.ncols)

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        return Matrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def column(self, j):
        return [r[j] for r in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def _primitive(row):
    """Scale a rational row to coprime integers, preserving sign."""
    den = 1
    for x in row:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return [Fraction(v) for v in ints]


def rref(m):
    """Reduced row echelon form.

    Returns (R, pivots, rank).  Pivoting is deterministic: first row with a
    nonzero entry in the leftmost open column.  The forward pass keeps rows
    as coprime integers to curb coefficient growth; the backward pass
    normalizes pivots to one.
    """
    work = [_primitive([Fraction(x) for x in row]) for row in m.rows]
    nrows, ncols = len(work), m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        src = next((i for i in range(r, nrows) if work[i][c]), None)
        if src is None:
            continue
        work[r], work[src] = work[src], work[r]
        a = work[r][c]
        for i in range(r + 1, nrows):
            b = work[i][c]
            if b:
                work[i] = _primitive([a * y - b * x for x, y in zip(work[r], work[i])])
        pivots.append(c)
        r += 1
    for k in reversed(range(len(pivots))):
        c = pivots[k]
        inv = Fraction(1) / work[k][c]
        work[k] = [x * inv for x in work[k]]
        for i in range(k):
            b = work[i][c]
            if b:
                work[i] = [x - b * y for x, y in zip(work[i], work[k])]
    return Matrix(work, ncols=ncols, col_labels=m.col_labels), tuple(pivots), len(pivots)


def rank(m):
    return rref(m)[2]


def kernel_basis(m):
    """Canonical basis of the right null space, one vector per free column.

    The free column gets coefficient 1, the other free columns 0, and pivot
    columns the negated RREF entry, so the output is the unique RREF
    parameterization and deterministic.
    """
    R, pivots, _ = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row_idx, c in enumerate(pivots):
            v[c] = -R.rows[row_idx][f]
        basis.append(v)
    return basis


def solve_square(m, rhs):
    """Solve m x = rhs for square m; raises Singular on rank deficiency."""
    n = m.nrows
    if m.ncols != n or len(rhs) != n:
        raise ValueError("solve_square needs a square system")
    if n == 0:
        return []
    aug = Matrix([list(row) + [rhs[i]] for i, row in enumerate(m.rows)], ncols=n + 1)
    R, pivots, rnk = rref(aug)
    if rnk < n or pivots != tuple(range(n)):
        raise Singular(f"rank {rnk} < {n}")
    return [R.rows[i][n] for i in range(n)]


def char_poly(m):
    """Characteristic polynomial det(X*I - m), division-free.

    Berkowitz recursion on trailing principal submatrices: coefficient
    vectors grow by one truncated Toeplitz convolution per step, so the
    whole computation stays in the entry ring.
    """
    from .poly import Poly

    size = m.nrows
    if m.ncols != size:
        raise ValueError("char_poly needs a square matrix")
    coeffs = [Fraction(1)]
    for i in range(size - 1, -1, -1):
        s = size - 1 - i
        a = Fraction(m.rows[i][i])
        r = [Fraction(x) for x in m.rows[i][i + 1 :]]
        c = [Fraction(m.rows[k][i]) for k in range(i + 1, size)]
        block = [
            [Fraction(m.rows[k][j]) for j in range(i + 1, size)] for k in range(i + 1, size)
        ]
        t = [Fraction(1), -a]
        w = c
        for _ in range(s):
            t.append(-sum(x * y for x, y in zip(r, w)))
            w = [sum(block[p][q] * w[q] for q in range(s)) for p in range(s)]
        new = []
        for out_idx in range(len(coeffs) + 1):
            acc = Fraction(0)
            for j, v in enumerate(coeffs):
                shift = out_idx - j
                if 0 <= shift < len(t):
                    acc += t[shift] * v
            new.append(acc)
        coeffs = new
    return Poly(1, {(size - idx,): c for idx, c in enumerate(coeffs) if c})
