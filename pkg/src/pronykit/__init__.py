"""Exact recovery of sparse structured sums from finitely many evaluations.

The package reconstructs the support and coefficients of expressions such as
multivariate exponential sums, sparse polynomials written in the monomial or
Chebyshev basis, Gaussian mixtures, and iterated-operator sums.  The engine
builds structured evaluation matrices degree by degree, intersects their
kernels, and reads the support off a commuting family of multiplication
operators.  All core arithmetic is exact over the rationals; a tolerance-based
float path exists for data that is only known approximately.
"""

from .arith import approx, integer_log, rational_format, rational_parse
from .errors import (
    BadBase,
    BoundExceeded,
    DecodeFailure,
    DegreeExhausted,
    DegreeInsufficient,
    DegreeLeak,
    DivisionByZero,
    DomainMismatch,
    EigenFailure,
    IrrationalSpectrum,
    IrrationalSupport,
    MalformedLiteral,
    MissingSample,
    NonCommuting,
    NonFinite,
    NotDistinguished,
    NotGroebner,
    NotOrderIdeal,
    NotSurjective,
    NotZeroDimensional,
    PronyError,
    RepeatedEigenvalues,
    ResidualTooLarge,
    Singular,
    SpecInvalid,
    VerificationFailed,
    ZeroDenominator,
    ZeroDirection,
)
from .linalg import Matrix, char_poly, kernel_basis, rank, rref, solve_square
from .poly import (
    IndexFamily,
    MonomialOrder,
    Poly,
    border,
    family_members,
    is_distinguished,
    is_order_ideal,
    minkowski_diff,
    minkowski_sum,
    normal_form,
    s_polynomial,
)
from .prony import (
    PronyOutcome,
    PronyStructureSpec,
    SampleOracle,
    coefficient_solve,
    degree_for_rank,
    estimate_degree,
    run_pipeline,
    verify_matrix_conditions,
    verify_prony_conditions,
)
from .relative import (
    AlgebraicSet,
    coordinate_basis,
    relative_hankel,
    relative_hankel_square,
    run_relative_pipeline,
)
from .structures import (
    chebpoly_oracle,
    chebsum_oracle,
    chebyshev_structure,
    chebyshev_unfolded,
    chebyshev_value,
    decode_chebyshev_support,
    decode_gaussian,
    decode_kronecker,
    decode_monomial_support,
    evaluation_count,
    expsum_oracle,
    gaussian_oracle,
    hankel_structure,
    kronecker_oracle,
    operator_oracle,
    polynomial_oracle,
    polynomial_to_expsum,
    projection_oracle,
    toeplitz_structure,
)
from .vanish import (
    MoellerBasis,
    PointSet,
    moeller_basis,
    stabilization_bound,
    vandermonde,
    vanishing_space,
)
from .zerodim import (
    QuotientModel,
    ZeroLocus,
    quotient_model,
    quotient_model_float,
    rational_roots,
    zero_locus_exact,
    zero_locus_float,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
