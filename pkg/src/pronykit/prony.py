"""The reconstruction pipeline: structured matrix -> kernel -> quotient ->
locus -> coefficients, with degree selection and sample verification.

A structure spec packages how to build the matrix family for a sample oracle
and how its column labels act as functions of a support point (the atom).
The pipeline itself is structure-agnostic.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .errors import (
    DegreeExhausted,
    DegreeInsufficient,
    IrrationalSpectrum,
    IrrationalSupport,
    MissingSample,
    NotZeroDimensional,
    RepeatedEigenvalues,
    Singular,
    VerificationFailed,
)
from .linalg import Matrix, rank, solve_square
from .poly import IndexFamily, MonomialOrder
from .vanish import PointSet, VanishingSpace, point_power, vanishing_space
from .zerodim import (
    quotient_model,
    quotient_model_float,
    zero_locus_exact,
    zero_locus_float,
)

DEFAULT_MAX_DEGREE = 12
_VERIFY_EXTRAS = 10
_VERIFY_DRAWS = 5


class SampleOracle:
    """Memoized access to f on a lattice; counts distinct queried indices."""

    __slots__ = ("n", "domain", "_query", "_cache")

    def __init__(self, n, domain, query):
        if domain not in ("nat", "int"):
            raise ValueError(f"unknown domain {domain!r}")
        self.n = int(n)
        self.domain = domain
        self._query = query
        self._cache = {}

    def __call__(self, index):
        index = tuple(int(k) for k in index)
        if len(index) != self.n:
            raise ValueError(f"index {index} has length {len(index)}, expected {self.n}")
        if self.domain == "nat" and any(k < 0 for k in index):
            raise ValueError(f"negative index {index} on a natural lattice")
        if index not in self._cache:
            self._cache[index] = self._query(index)
        return self._cache[index]

    @property
    def evaluations(self):
        return len(self._cache)

    def ensure(self, indices):
        """Query a batch up front; one error lists every missing index."""
        missing = []
        for idx in sorted(set(tuple(int(k) for k in i) for i in indices)):
            try:
                self(idx)
            except MissingSample:
                missing.append(idx)
        if missing:
            raise MissingSample(missing)

    @classmethod
    def from_table(cls, n, domain, table):
        fixed = {tuple(int(k) for k in idx): v for idx, v in table.items()}

        def query(index):
            try:
                return fixed[index]
            except KeyError:
                raise MissingSample((index,)) from None

        return cls(n, domain, query)

    @classmethod
    def from_function(cls, n, domain, fn):
        return cls(n, domain, fn)


def monomial_atom(gamma, x):
    """Default column semantics: the label is a (Laurent) monomial exponent."""
    return point_power(x, gamma)


class PronyStructureSpec:
    """How one structured family is built and interpreted.

    ``builder(spec, d, oracle)`` returns the degree-d matrix with exponent
    column labels; ``sample_plan(spec, d)`` lists which lattice indices that
    build will query; ``atom(gamma, x)`` is the value at x of the basis
    function labeled gamma, used for coefficient solves and verification.
    """

    __slots__ = (
        "name",
        "n",
        "domain",
        "column_family",
        "row_family",
        "row_lag",
        "order",
        "builder",
        "sample_plan",
        "atom",
        "exact",
    )

    def __init__(
        self,
        name,
        n,
        domain,
        column_family,
        row_family,
        row_lag,
        order,
        builder,
        sample_plan,
        atom=monomial_atom,
        exact=True,
    ):
        self.name = name
        self.n = int(n)
        self.domain = domain
        self.column_family = column_family
        self.row_family = row_family
        self.row_lag = int(row_lag)
        self.order = order or MonomialOrder()
        self.builder = builder
        self.sample_plan = sample_plan
        self.atom = atom
        self.exact = exact

    def row_degree(self, d):
        # lag 1 gives rows one level behind columns, except at the base
        return d if d == 0 else max(d - self.row_lag, 0)

    def columns(self, d):
        return self.column_family.members(d, self.order)

    def rows(self, d):
        return self.row_family.members(self.row_degree(d), self.order)

    def build(self, d, oracle):
        return self.builder(self, d, oracle)

    def plan(self, d):
        return self.sample_plan(self, d)

    def __repr__(self):
        return f"PronyStructureSpec({self.name!r}, n={self.n}, domain={self.domain!r})"


class PronyOutcome:
    """Reconstruction result: support points, coefficients, bookkeeping."""

    __slots__ = ("support", "coefficients", "degree_used", "mode", "exact", "evaluation_count")

    def __init__(self, support, coefficients, degree_used, mode, exact, evaluation_count):
        self.support = support
        self.coefficients = tuple(coefficients)
        self.degree_used = int(degree_used)
        self.mode = mode
        self.exact = exact
        self.evaluation_count = int(evaluation_count)

    def __repr__(self):
        return (
            f"PronyOutcome({len(self.support)} terms, d={self.degree_used}, "
            f"mode={self.mode!r}, exact={self.exact}, evals={self.evaluation_count})"
        )


def degree_for_rank(spec, r):
    """Least degree whose column set contains the full simplex of level r."""
    simplex = IndexFamily("total", spec.n).members(r)
    d = 0
    while True:
        cols = set(spec.columns(d))
        if all(alpha in cols for alpha in simplex):
            return d
        d += 1
        if d > (r + 1) ** spec.n + 1:
            raise ValueError(f"no degree captures the level-{r} simplex")


def _float_kernel(matrix, rtol=1e-8):
    """Numerical kernel of a labeled float matrix via equilibrated SVD."""
    if matrix.ncols == 0:
        return []
    A = np.array([[float(x) for x in row] for row in matrix.rows], dtype=float)
    m, n = A.shape if A.size else (matrix.nrows, matrix.ncols)
    if m == 0:
        return [
            [1.0 if j == i else 0.0 for j in range(matrix.ncols)]
            for i in range(matrix.ncols)
        ]
    # row/column equilibration: kernel of A D is D^{-1}-scaled kernel of A
    row_scale = np.maximum(np.abs(A).max(axis=1), 1e-300)
    A = A / row_scale[:, None]
    col_scale = np.maximum(np.abs(A).max(axis=0), 1e-300)
    A = A / col_scale[None, :]
    _, sing, vt = np.linalg.svd(A)
    top = sing[0] if sing.size else 0.0
    numerical_rank = int(np.sum(sing > rtol * top)) if top > 0 else 0
    vecs = []
    for i in range(numerical_rank, n):
        v = vt[i] / col_scale
        v = v / np.max(np.abs(v))
        vecs.append([float(x) for x in v])
    return vecs


def _kernel_space(spec, matrix):
    if spec.exact:
        return VanishingSpace.from_kernel(matrix, spec.order)
    labels = matrix.col_labels
    from .poly import Poly

    polys = [Poly.from_vector(spec.n, labels, v) for v in _float_kernel(matrix)]
    return VanishingSpace(spec.n, labels, polys, spec.order)


def _solve_at(spec, oracle, d, rng, tol):
    matrix = spec.build(d, oracle)
    space = _kernel_space(spec, matrix)
    if spec.exact:
        model = quotient_model(space, spec.order)
        try:
            locus = zero_locus_exact(model, rng)
        except IrrationalSpectrum as exc:
            raise IrrationalSupport(str(exc)) from exc
    else:
        model = quotient_model_float(space, spec.order)
        locus = zero_locus_float(model, tol, rng)
    return locus, model


def _matrix_rank(spec, matrix, rtol=1e-8):
    if spec.exact:
        return rank(matrix)
    A = np.array([[float(x) for x in row] for row in matrix.rows], dtype=float)
    if A.size == 0:
        return 0
    row_scale = np.maximum(np.abs(A).max(axis=1), 1e-300)
    A = A / row_scale[:, None]
    col_scale = np.maximum(np.abs(A).max(axis=0), 1e-300)
    A = A / col_scale[None, :]
    sing = np.linalg.svd(A, compute_uv=False)
    top = sing[0] if sing.size else 0.0
    return int(np.sum(sing > rtol * top)) if top > 0 else 0


def _stabilize(spec, oracle, max_degree, rng, tol):
    """Least degree with stable rank and an extractable locus."""
    for d in range(max_degree):
        r_here = _matrix_rank(spec, spec.build(d, oracle))
        r_next = _matrix_rank(spec, spec.build(d + 1, oracle))
        if r_here == r_next:
            try:
                locus, model = _solve_at(spec, oracle, d, rng, tol)
                return d, locus, model
            except (DegreeInsufficient, NotZeroDimensional, RepeatedEigenvalues):
                pass
    raise DegreeExhausted(f"no stable degree up to {max_degree}")


def estimate_degree(spec, oracle=None, rank_bound=None, max_degree=DEFAULT_MAX_DEGREE, seed=0, tol=1e-6):
    if rank_bound is not None:
        return degree_for_rank(spec, rank_bound)
    if oracle is None:
        raise ValueError("auto degree estimation needs an oracle")
    rng = random.Random(seed)
    d, _, _ = _stabilize(spec, oracle, max_degree, rng, tol)
    return d


def coefficient_solve(support, oracle, normal_set, atom=monomial_atom, exact=True):
    """Solve sum_x c_x atom(gamma, x) = f(gamma) over the normal-set indices.

    The system is square (one row per normal-set element, one column per
    support point); Singular here means the caller paired a support with a
    normal set that does not separate it, which is an internal error.
    """
    points = list(support)
    gammas = list(normal_set)
    if len(points) != len(gammas):
        raise ValueError(f"{len(points)} points but {len(gammas)} normal-set rows")
    if not points:
        return []
    A = Matrix([[atom(g, x) for x in points] for g in gammas], ncols=len(points))
    rhs = [oracle(g) for g in gammas]
    if exact:
        return solve_square(A, rhs)
    arr = np.array([[float(v) for v in row] for row in A.rows])
    b = np.array([float(v) for v in rhs])
    sol, _, rnk, _ = np.linalg.lstsq(arr, b, rcond=None)
    if rnk < len(points):
        raise Singular(f"atom matrix rank {rnk} < {len(points)}")
    return [float(x) for x in sol]


def _verification_grid(spec, d, rng):
    grid = list(spec.columns(d))
    span = 2 * d + 5
    for _ in range(_VERIFY_EXTRAS):
        if spec.domain == "nat":
            idx = tuple(rng.randrange(span) for _ in range(spec.n))
        else:
            idx = tuple(rng.randrange(-span, span + 1) for _ in range(spec.n))
        grid.append(idx)
    return grid


def _verify_samples(spec, oracle, d, pairs, rng, tol):
    for gamma in _verification_grid(spec, d, rng):
        try:
            expected = oracle(gamma)
        except MissingSample:
            continue
        predicted = sum((c * spec.atom(gamma, x) for x, c in pairs), start=Fraction(0) if spec.exact else 0.0)
        if spec.exact:
            ok = predicted == expected
        else:
            ok = abs(predicted - expected) <= tol * (1.0 + abs(expected))
        if not ok:
            raise VerificationFailed(
                f"reconstruction disagrees with the oracle at index {gamma}"
            )


def run_pipeline(
    spec,
    oracle,
    rank_bound=None,
    max_degree=DEFAULT_MAX_DEGREE,
    seed=0,
    tol=1e-6,
):
    """Full reconstruction.  Give ``rank_bound`` for the direct degree rule,
    otherwise the degree loop stabilizes the rank and proves a locus.
    """
    rng = random.Random(seed)
    if rank_bound is not None:
        d = degree_for_rank(spec, rank_bound)
        locus, model = _solve_at(spec, oracle, d, rng, tol)
        mode = "rank_bound"
    else:
        d, locus, model = _stabilize(spec, oracle, max_degree, rng, tol)
        mode = "stabilized"

    points = list(locus.points)
    coeffs = coefficient_solve(points, oracle, model.normal_set, spec.atom, spec.exact)
    pairs = [(x, c) for x, c in zip(points, coeffs) if c]
    pairs.sort(key=lambda pc: pc[0])
    evaluation_count = oracle.evaluations
    _verify_samples(spec, oracle, d, pairs, rng, tol)
    return PronyOutcome(
        PointSet(spec.n, [x for x, _ in pairs]),
        [c for _, c in pairs],
        d,
        mode,
        spec.exact,
        evaluation_count,
    )


def verify_prony_conditions(spec, oracle, support, d, seed=0):
    """Check the two kernel conditions of the structure at degree d."""
    matrix = spec.build(d, oracle)
    return verify_matrix_conditions(matrix, support, spec.order, seed)


def verify_matrix_conditions(matrix, support, order=None, seed=0):
    """Verdict for one labeled matrix against a known support.

    "ok" iff the kernel's zero locus equals the support and every
    polynomial vanishing on the support (within the column degrees) lies in
    the kernel.  Locus mismatch takes precedence when both fail.
    """
    order = order or MonomialOrder()
    rng = random.Random(seed)
    labels = matrix.col_labels
    if labels is None:
        raise ValueError("matrix has no column labels")

    if not _locus_matches(matrix, support, order, rng):
        return "zl_mismatch"

    space = vanishing_space(labels, support, order)
    for p in space.basis:
        vec = [p.coeff(m) for m in labels]
        if any(v != 0 for v in matrix.matvec(vec)):
            return "vanishing_violation"
    return "ok"


def _locus_matches(matrix, support, order, rng):
    from .linalg import kernel_basis
    from .poly import Poly

    n = support.n
    vecs = kernel_basis(matrix)
    labels = matrix.col_labels
    polys = [Poly.from_vector(n, labels, v) for v in vecs]
    # support must lie inside the kernel's zero set
    for p in polys:
        for x in support:
            if p.evaluate(x) != 0:
                return False
    if not polys:
        # zero kernel vanishes everywhere; only an empty support could not
        # match, and a nonempty one cannot equal all of K^n either
        return False
    space = VanishingSpace(n, labels, polys, order)
    try:
        model = quotient_model(space, order)
    except (DegreeInsufficient, NotZeroDimensional):
        return False
    if model.dimension == 0:
        return len(support) == 0
    candidates = _tolerant_candidates(model, polys, rng)
    if candidates is None:
        return False
    return candidates == set(support.points)


def _tolerant_candidates(model, polys, rng):
    """Sound candidate set for the kernel's zero locus.

    Unlike the strict locus, repeated eigenvalues are allowed: candidates
    come from every left eigenspace basis vector with a usable constant
    coordinate, then must kill every kernel polynomial exactly.  Linear
    form collisions between genuinely distinct points are retried.
    """
    from .linalg import Matrix as _M
    from .linalg import char_poly, kernel_basis
    from .zerodim import _combination, _draw_coeffs, rational_roots

    k = model.dimension
    n = model.n
    one_idx = model.normal_set.index((0,) * n)
    unit_exps = [(0,) * i + (1,) + (0,) * (n - 1 - i) for i in range(n)]
    best = None
    for _ in range(1 if n == 1 else _VERIFY_DRAWS):
        coeffs = _draw_coeffs(model, rng, True)
        M = _combination(model, coeffs)
        roots, fully_split = rational_roots(char_poly(M))
        if not fully_split:
            return None
        Mt = M.transpose()
        candidates = set()
        suspicious = False
        for lam in sorted(set(roots)):
            vecs = kernel_basis(Mt - _M.identity(k).scale(lam))
            for v in vecs:
                if v[one_idx] == 0:
                    continue
                inv = Fraction(1) / v[one_idx]
                w = [x * inv for x in v]
                point = tuple(
                    sum(r * w[j] for j, r in enumerate(model.reductions[e]))
                    for e in unit_exps
                )
                if all(p.evaluate(point) == 0 for p in polys):
                    candidates.add(point)
                else:
                    # an eigenspace mixing two collided points reads garbage
                    suspicious = True
        if not suspicious:
            return candidates
        best = candidates
    return best
