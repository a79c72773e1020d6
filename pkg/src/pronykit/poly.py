"""Exponent tuples, monomial orders, degree-set families, sparse polynomials.

Exponents are bare tuples of ints.  Over N^n they index monomials; the same
tuples with signed entries serve as lattice indices for Z^n sample domains,
so the arithmetic helpers accept negative entries and the set predicates
(order ideal, border, families) reject them.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import NotOrderIdeal


def exponent(coords):
    """Coerce to a validated exponent tuple (ints, any sign)."""
    out = tuple(int(c) for c in coords)
    for c, given in zip(out, coords):
        if c != given:
            raise ValueError(f"non-integer exponent entry {given!r}")
    return out


def exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def exp_deg(a):
    return sum(a)


def exp_divides(a, b):
    """True iff X^a divides X^b componentwise."""
    return all(x <= y for x, y in zip(a, b))


class MonomialOrder:
    """Total multiplicative order on exponent tuples with 1 minimal.

    ``precedence`` lists 0-based variable positions from most significant to
    least; default is X1 > X2 > ... > Xn.
    """

    KINDS = ("lex", "grlex", "degrevlex")

    __slots__ = ("kind", "precedence")

    def __init__(self, kind="degrevlex", precedence=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.precedence = None if precedence is None else tuple(precedence)

    def _permuted(self, alpha):
        if self.precedence is None:
            return tuple(alpha)
        return tuple(alpha[i] for i in self.precedence)

    def key(self, alpha):
        """Sort key: sorted(..., key=order.key) lists exponents ascending."""
        beta = self._permuted(alpha)
        if self.kind == "lex":
            return beta
        degree = sum(beta)
        if self.kind == "grlex":
            return (degree, beta)
        # degrevlex: higher degree wins, ties broken by *smaller* last entry
        return (degree, tuple(-b for b in reversed(beta)))

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def sort(self, exponents):
        return sorted(exponents, key=self.key)

    def max(self, exponents):
        return max(exponents, key=self.key)

    def min(self, exponents):
        return min(exponents, key=self.key)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.precedence == other.precedence
        )

    def __hash__(self):
        return hash((self.kind, self.precedence))

    def __repr__(self):
        if self.precedence is None:
            return f"MonomialOrder({self.kind!r})"
        return f"MonomialOrder({self.kind!r}, precedence={self.precedence!r})"


class IndexFamily:
    """Graded exponent-set families: total degree, max degree, hyperbolic cross.

    total:      sum(alpha) <= d
    max:        max(alpha) <= d
    hyperbolic: prod(alpha_i + 1) <= d   (empty at d = 0)
    """

    KINDS = ("total", "max", "hyperbolic")

    __slots__ = ("kind", "n")

    def __init__(self, kind, n):
        if kind not in self.KINDS:
            raise ValueError(f"unknown family {kind!r}")
        if n < 1:
            raise ValueError("need at least one variable")
        self.kind = kind
        self.n = int(n)

    def contains(self, alpha, d):
        if len(alpha) != self.n or any(a < 0 for a in alpha):
            return False
        if self.kind == "total":
            return sum(alpha) <= d
        if self.kind == "max":
            return max(alpha) <= d
        prod = 1
        for a in alpha:
            prod *= a + 1
        return prod <= d

    def members(self, d, order=None):
        """All members at level d, ascending in ``order`` (degrevlex default)."""
        if d < 0:
            return []
        bound = max(d - 1, 0) if self.kind == "hyperbolic" else d
        found = [
            alpha
            for alpha in product(range(bound + 1), repeat=self.n)
            if self.contains(alpha, d)
        ]
        return (order or MonomialOrder()).sort(found)

    def __eq__(self, other):
        return (
            isinstance(other, IndexFamily)
            and self.kind == other.kind
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return f"IndexFamily({self.kind!r}, n={self.n})"


def family_members(kind, n, d, order=None):
    return IndexFamily(kind, n).members(d, order)


def minkowski_sum(A, B):
    """{a + b : a in A, b in B}; empty if either side is empty."""
    return {exp_add(a, b) for a in A for b in B}


def minkowski_diff(B, A):
    """Signed difference {b - a : b in B, a in A} over Z^n."""
    return {exp_sub(b, a) for b in B for a in A}


def is_order_ideal(D, n):
    """Closed under componentwise decrement (divisibility-downward)."""
    members = set(D)
    for alpha in members:
        if len(alpha) != n or any(a < 0 for a in alpha):
            return False
        for i, a in enumerate(alpha):
            if a > 0:
                down = alpha[:i] + (a - 1,) + alpha[i + 1 :]
                if down not in members:
                    return False
    return True


def border(D, n):
    """Border of an order ideal: (union_i D + e_i) minus D; border({}) = {1}."""
    members = set(D)
    if not is_order_ideal(members, n):
        raise NotOrderIdeal(f"not an order ideal: {sorted(members)}")
    if not members:
        return {(0,) * n}
    out = set()
    for alpha in members:
        for i in range(n):
            up = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1 :]
            if up not in members:
                out.add(up)
    return out


def is_distinguished(D, n, order):
    """True iff every member of D precedes every non-member monomial.

    The finite check max(D) < min(border(D)) is exact for every monomial
    order: a non-member is divisible by some border element, and monomial
    orders are multiplicative, so the minimum over all non-members is
    attained on the border.
    """
    members = set(D)
    if not members:
        return True
    bd = border(members, n)
    return order.compare(order.max(members), order.min(bd)) < 0


class Poly:
    """Sparse polynomial: exponent tuple -> nonzero coefficient.

    Coefficients are whatever scalar the pipeline runs on (Fraction on the
    exact path, float on the approximate one).  Zero coefficients are
    dropped on construction; duplicate exponents are accumulated.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for alpha, coeff in items:
            alpha = tuple(alpha)
            if len(alpha) != n:
                raise ValueError(f"exponent {alpha} has length {len(alpha)}, expected {n}")
            acc = clean.get(alpha, 0) + coeff
            if acc:
                clean[alpha] = acc
            else:
                clean.pop(alpha, None)
        self.n = n
        self.terms = clean

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def constant(cls, n, coeff):
        return cls(n, {(0,) * n: coeff})

    @classmethod
    def monomial(cls, n, alpha, coeff=Fraction(1)):
        return cls(n, {tuple(alpha): coeff})

    @classmethod
    def from_vector(cls, n, labels, coeffs):
        return cls(n, zip(labels, coeffs))

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, alpha):
        return self.terms.get(tuple(alpha), Fraction(0))

    def support(self):
        return set(self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(a) for a in self.terms)

    def leading_term(self, order):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        alpha = order.max(self.terms)
        return alpha, self.terms[alpha]

    def __add__(self, other):
        other = self._coerce(other)
        merged = dict(self.terms)
        for alpha, c in other.terms.items():
            acc = merged.get(alpha, 0) + c
            if acc:
                merged[alpha] = acc
            else:
                merged.pop(alpha, None)
        return Poly(self.n, merged)

    def __neg__(self):
        return Poly(self.n, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, Poly):
            out = {}
            for a, ca in self.terms.items():
                for b, cb in other.terms.items():
                    key = exp_add(a, b)
                    acc = out.get(key, 0) + ca * cb
                    if acc:
                        out[key] = acc
                    else:
                        out.pop(key, None)
            return Poly(self.n, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if not c:
            return Poly(self.n)
        return Poly(self.n, {a: c * v for a, v in self.terms.items()})

    def shift(self, alpha, coeff=Fraction(1)):
        """Multiply by coeff * X^alpha."""
        if not coeff:
            return Poly(self.n)
        return Poly(self.n, {exp_add(a, alpha): coeff * v for a, v in self.terms.items()})

    def evaluate(self, point):
        if len(point) != self.n:
            raise ValueError("point dimension mismatch")
        total = 0
        for alpha, c in self.terms.items():
            term = c
            for x, a in zip(point, alpha):
                if a:
                    term *= x**a
            total += term
        return total

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            return other
        return Poly.constant(self.n, other)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for alpha in sorted(self.terms, key=lambda a: (sum(a), a), reverse=True):
            c = self.terms[alpha]
            mono = "*".join(
                f"X{i + 1}" if a == 1 else f"X{i + 1}^{a}"
                for i, a in enumerate(alpha)
                if a
            )
            bits.append(f"{c}" if not mono else f"{c}*{mono}")
        return "Poly(" + " + ".join(bits) + ")"


def normal_form(p, basis, order):
    """Remainder of multivariate division of p by ``basis`` under ``order``."""
    divisors = [(g.terms,) + g.leading_term(order) for g in basis if g]
    key = order.key
    # mutate a working dict in place; allocating a Poly per step is too slow
    # for the Groebner S-pair checks
    work = dict(p.terms)
    remainder = {}
    while work:
        alpha = max(work, key=key)
        coeff = work.pop(alpha)
        for gterms, galpha, gcoeff in divisors:
            if exp_divides(galpha, alpha):
                scale = coeff / gcoeff
                shift = exp_sub(alpha, galpha)
                for beta, gc in gterms.items():
                    if beta == galpha:
                        continue
                    target = exp_add(beta, shift)
                    acc = work.get(target, 0) - gc * scale
                    if acc:
                        work[target] = acc
                    else:
                        work.pop(target, None)
                break
        else:
            remainder[alpha] = coeff
    return Poly(p.n, remainder)


def s_polynomial(f, g, order):
    fa, fc = f.leading_term(order)
    ga, gc = g.leading_term(order)
    lcm = tuple(max(x, y) for x, y in zip(fa, ga))
    return f.shift(exp_sub(lcm, fa), Fraction(1) / fc) - g.shift(
        exp_sub(lcm, ga), Fraction(1) / gc
    )
