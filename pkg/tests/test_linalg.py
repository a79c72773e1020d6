"""Exact matrices: rref, rank, kernels, square solve, characteristic polynomial."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pronykit.errors import Singular
from pronykit.linalg import Matrix, char_poly, kernel_basis, rank, rref, solve_square
from pronykit.poly import Poly

F = Fraction


def _m(rows):
    return Matrix([[F(x) for x in row] for row in rows])


def test_kernel_hankel_example():
    # samples of 2^k + 3^k laid out as a 2x3 Hankel slab
    m = _m([[2, 5, 13], [5, 13, 35]])
    basis = kernel_basis(m)
    assert basis == [[F(6), F(-5), F(1)]]
    assert m.matvec(basis[0]) == [F(0), F(0)]


def test_kernel_chebyshev_example():
    m = _m([[2, 16, 344], [16, 344, 8800]])
    basis = kernel_basis(m)
    assert basis == [[F(52), F(-28), F(1)]]


def test_kernel_identity_empty():
    assert kernel_basis(Matrix.identity(3)) == []


def test_kernel_zero_matrix():
    m = Matrix([[F(0), F(0)], [F(0), F(0)]])
    basis = kernel_basis(m)
    assert basis == [[F(1), F(0)], [F(0), F(1)]]


def test_rank_and_rref():
    m = _m([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    assert rank(m) == 2
    R, pivots, r = rref(m)
    assert r == 2 and pivots == (0, 1)
    # pivot columns carry the identity
    assert R.rows[0][0] == 1 and R.rows[0][1] == 0
    assert R.rows[1][0] == 0 and R.rows[1][1] == 1


def test_solve_square():
    m = _m([[1, 1], [2, 3]])
    assert solve_square(m, [F(2), F(5)]) == [F(1), F(1)]
    with pytest.raises(Singular):
        solve_square(_m([[1, 2], [2, 4]]), [F(1), F(1)])


def test_matrix_ops():
    a = _m([[1, 2], [3, 4]])
    b = _m([[0, 1], [1, 0]])
    assert (a @ b).rows == _m([[2, 1], [4, 3]]).rows
    assert a.transpose().rows == _m([[1, 3], [2, 4]]).rows
    assert (a + b).rows == _m([[1, 3], [4, 4]]).rows
    assert a.scale(F(2)).rows == _m([[2, 4], [6, 8]]).rows
    assert a.column(1) == [F(2), F(4)]


def test_char_poly_frozen():
    assert char_poly(_m([[7]])) == Poly(1, {(1,): F(1), (0,): F(-7)})
    assert char_poly(_m([[2, 0], [0, 3]])) == Poly(
        1, {(2,): F(1), (1,): F(-5), (0,): F(6)}
    )
    companion = _m([[0, -52], [1, 28]])
    assert char_poly(companion) == Poly(1, {(2,): F(1), (1,): F(-28), (0,): F(52)})


def test_char_poly_zero_and_nilpotent():
    assert char_poly(_m([[0, 0], [0, 0]])) == Poly(1, {(2,): F(1)})
    assert char_poly(_m([[0, 1], [0, 0]])) == Poly(1, {(2,): F(1)})


def _random_matrix(rng, nrows, ncols, span=6):
    return Matrix(
        [
            [F(rng.randint(-span, span)) for _ in range(ncols)]
            for _ in range(nrows)
        ]
    )


def test_kernel_vectors_annihilate():
    rng = random.Random(3)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        m = _random_matrix(rng, nrows, ncols)
        basis = kernel_basis(m)
        assert len(basis) == ncols - rank(m)
        for v in basis:
            assert m.matvec(v) == [F(0)] * nrows


def test_rref_idempotent():
    rng = random.Random(5)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        R, pivots, r = rref(m)
        R2, pivots2, r2 = rref(R)
        assert (R2.rows, pivots2, r2) == (R.rows, pivots, r)


def test_cayley_hamilton():
    rng = random.Random(7)
    for _ in range(15):
        k = rng.randint(1, 5)
        m = _random_matrix(rng, k, k, span=3)
        p = char_poly(m)
        acc = Matrix([[F(0)] * k for _ in range(k)])
        power = Matrix.identity(k)
        # evaluate p at the matrix, lowest degree first
        coeffs = [p.coeff((j,)) for j in range(k + 1)]
        for c in coeffs:
            acc = acc + power.scale(c)
            power = power @ m
        assert acc.rows == [[F(0)] * k for _ in range(k)]


@settings(max_examples=40)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=100))
def test_rank_nullity(k, seed):
    rng = random.Random(seed)
    m = _random_matrix(rng, k, rng.randint(1, 4))
    assert rank(m) + len(kernel_basis(m)) == m.ncols
