"""Monomial orders, index families, order ideals, borders, polynomials."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pronykit.errors import NotOrderIdeal
from pronykit.poly import (
    IndexFamily,
    MonomialOrder,
    Poly,
    border,
    exp_add,
    exp_divides,
    exp_sub,
    family_members,
    is_distinguished,
    is_order_ideal,
    minkowski_diff,
    minkowski_sum,
    normal_form,
    s_polynomial,
)


def test_degrevlex_classic_pairs():
    o = MonomialOrder("degrevlex")
    assert o.compare((2, 0), (1, 1)) > 0
    assert o.compare((1, 1), (0, 2)) > 0
    assert o.compare((0, 2), (2, 0)) < 0
    assert o.compare((1, 0), (0, 1)) > 0
    assert o.compare((3, 0), (0, 0)) > 0
    assert o.compare((1, 1), (1, 1)) == 0


def test_lex_vs_graded():
    lex = MonomialOrder("lex")
    grlex = MonomialOrder("grlex")
    # lex ignores total degree
    assert lex.compare((1, 0), (0, 5)) > 0
    assert grlex.compare((1, 0), (0, 5)) < 0
    assert grlex.compare((2, 1), (1, 2)) > 0


def test_degrevlex_vs_grlex_differ():
    # same degree block, different tie break in 3 variables:
    # revlex penalizes the trailing variable, plain lex rewards the leading one
    dr = MonomialOrder("degrevlex")
    gl = MonomialOrder("grlex")
    a, b = (1, 0, 1), (0, 2, 0)
    assert dr.compare(a, b) < 0
    assert gl.compare(a, b) > 0


def test_order_sort_and_extrema():
    o = MonomialOrder("degrevlex")
    ms = [(0, 2), (2, 0), (0, 0), (1, 1)]
    assert o.sort(ms) == [(0, 0), (0, 2), (1, 1), (2, 0)]
    assert o.max(ms) == (2, 0)
    assert o.min(ms) == (0, 0)


def test_family_total():
    fam = IndexFamily("total", 2)
    assert set(fam.members(1)) == {(0, 0), (1, 0), (0, 1)}
    assert len(fam.members(2)) == 6
    assert fam.contains((1, 1), 2)
    assert not fam.contains((2, 1), 2)
    assert not fam.contains((-1, 0), 2)


def test_family_max():
    fam = IndexFamily("max", 2)
    assert len(fam.members(1)) == 4
    assert len(fam.members(2)) == 9
    assert fam.contains((2, 2), 2)
    assert not fam.contains((3, 0), 2)


def test_family_hyperbolic():
    fam = IndexFamily("hyperbolic", 2)
    assert fam.members(0) == []
    assert set(fam.members(1)) == {(0, 0)}
    assert set(fam.members(2)) == {(0, 0), (0, 1), (1, 0)}
    assert fam.contains((1, 1), 4)
    assert not fam.contains((1, 1), 3)


def test_family_nesting():
    for kind in ("total", "max", "hyperbolic"):
        fam = IndexFamily(kind, 3)
        prev = set()
        for d in range(5):
            cur = set(fam.members(d))
            assert prev <= cur
            prev = cur


def test_members_ascending():
    o = MonomialOrder("degrevlex")
    ms = family_members("total", 2, 3)
    assert ms == o.sort(ms)


def test_minkowski_counts():
    # frozen: total families in 2 vars at degree 2 on both sides
    rows = family_members("total", 2, 2)
    cols = family_members("total", 2, 2)
    assert len(minkowski_sum(rows, cols)) == 15
    assert len(minkowski_diff(cols, rows)) == 19


def test_minkowski_max_equal():
    for d in (1, 2, 3):
        rows = family_members("max", 2, d)
        cols = family_members("max", 2, d)
        sums = minkowski_sum(rows, cols)
        diffs = minkowski_diff(cols, rows)
        assert len(sums) == len(diffs) == (2 * d + 1) ** 2


def test_order_ideal_checks():
    assert is_order_ideal([(0, 0), (1, 0), (0, 1)], 2)
    assert is_order_ideal([], 2)
    assert not is_order_ideal([(1, 0), (0, 1)], 2)
    assert not is_order_ideal([(0, 0), (2, 0)], 2)


def test_border_frozen():
    D = family_members("total", 2, 1)
    assert border(D, 2) == {(2, 0), (1, 1), (0, 2)}
    assert border([], 2) == {(0, 0)}
    assert border([(0,)], 1) == {(1,)}
    with pytest.raises(NotOrderIdeal):
        border([(1, 0)], 2)


def test_border_max_family():
    # one-step border only; the corner (2,2) is two steps away from the box
    D = family_members("max", 2, 1)
    assert border(D, 2) == {(2, 0), (2, 1), (1, 2), (0, 2)}


def test_distinguished():
    o = MonomialOrder("degrevlex")
    for d in range(4):
        assert is_distinguished(family_members("total", 2, d), 2, o)
    # the max-norm box is not: its corner beats part of its border
    for d in (1, 2):
        assert not is_distinguished(family_members("max", 2, d), 2, o)
    assert is_distinguished([(0,)], 1, MonomialOrder("lex"))
    assert is_distinguished([], 2, o)


def test_exponent_helpers():
    assert exp_add((1, 2), (3, 0)) == (4, 2)
    assert exp_sub((3, 2), (1, 2)) == (2, 0)
    assert exp_divides((1, 0), (2, 1))
    assert not exp_divides((2, 0), (1, 5))


def test_poly_basic_algebra():
    x = Poly.monomial(2, (1, 0))
    y = Poly.monomial(2, (0, 1))
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.coeff((2, 0)) == 1
    assert p.coeff((1, 1)) == 0
    assert p.evaluate((Fraction(3), Fraction(2))) == Fraction(5)
    assert (p - p).is_zero


def test_poly_leading_term():
    o = MonomialOrder("degrevlex")
    p = Poly(2, {(2, 0): Fraction(1), (0, 2): Fraction(5)})
    alpha, c = p.leading_term(o)
    assert alpha == (2, 0) and c == 1


def test_normal_form_univariate():
    o = MonomialOrder("degrevlex")
    # X^2 - 28X + 52 reduces X^3 to 28X^2 - 52X then onward
    g = Poly(1, {(2,): Fraction(1), (1,): Fraction(-28), (0,): Fraction(52)})
    p = Poly.monomial(1, (3,))
    r = normal_form(p, [g], o)
    assert r.support() <= {(0,), (1,)}
    # remainder agrees with p mod g at a root of g is automatic; check deg
    q = Poly(1, {(1,): Fraction(732), (0,): Fraction(-1456)})
    assert r == q


def test_normal_form_multivariate():
    o = MonomialOrder("degrevlex")
    # leading term of (Y - X) is X under any graded order, so X rewrites to Y
    gens = [
        Poly(2, {(2, 0): Fraction(1), (0, 0): Fraction(-1)}),
        Poly(2, {(0, 1): Fraction(1), (1, 0): Fraction(-1)}),
    ]
    p = Poly.monomial(2, (2, 2))
    r = normal_form(p, gens, o)
    assert r == Poly.monomial(2, (0, 2))
    # no remainder term is divisible by a leading term (X^2 or X)
    assert all(a[0] == 0 for a in r.support())


def test_s_polynomial_cancels_leads():
    o = MonomialOrder("degrevlex")
    f = Poly(2, {(2, 0): Fraction(1), (0, 1): Fraction(1)})
    g = Poly(2, {(1, 1): Fraction(1), (1, 0): Fraction(1)})
    s = s_polynomial(f, g, o)
    lead, _ = s.leading_term(o)
    assert o.compare(lead, (2, 1)) < 0


@given(st.integers(min_value=0, max_value=6), st.integers(min_value=1, max_value=3))
def test_total_family_is_order_ideal(d, n):
    assert is_order_ideal(family_members("total", n, d), n)
    assert is_order_ideal(family_members("max", n, d), n)
    assert is_order_ideal(family_members("hyperbolic", n, d), n)


@given(
    st.sampled_from(["lex", "grlex", "degrevlex"]),
    st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=6),
            st.integers(min_value=0, max_value=6),
        ),
        min_size=2,
        max_size=8,
    ),
)
def test_order_total_and_multiplicative(kind, ms):
    o = MonomialOrder(kind)
    rng = random.Random(11)
    a, b = rng.choice(ms), rng.choice(ms)
    c = rng.choice(ms)
    cab = o.compare(a, b)
    assert cab == -o.compare(b, a)
    if cab > 0:
        assert o.compare(exp_add(a, c), exp_add(b, c)) > 0
    assert o.compare(a, a) == 0
    if a != (0, 0):
        assert o.compare(a, (0, 0)) > 0
