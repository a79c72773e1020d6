"""Exception types shared across the package.

Grouped in one module so the CLI can map them onto exit codes in one place.
Exact division by zero keeps the stdlib type; ``DivisionByZero`` is an alias
so callers can catch it under the domain name.
"""


class PronyError(Exception):
    """Base class for every error raised by this package."""


DivisionByZero = ZeroDivisionError


# scalar layer

class MalformedLiteral(PronyError):
    """Text does not match the strict rational literal grammar."""


class ZeroDenominator(PronyError):
    """Rational literal or constructor with denominator zero."""


class BadBase(PronyError):
    """Integer logarithm with base 0, 1 or -1."""


class BoundExceeded(PronyError):
    """Integer logarithm gave up below its exponent bound."""


class NonFinite(PronyError):
    """A NaN or infinity tried to enter the approximate pipeline."""


# exponent / polynomial layer

class NotOrderIdeal(PronyError):
    """Exponent set is not closed under componentwise division."""


# linear algebra

class Singular(PronyError):
    """Square solve on a rank-deficient matrix."""


# vanishing ideals

class NotDistinguished(PronyError):
    """Degree set is not an initial segment of the monomial order."""


class NotSurjective(PronyError):
    """Evaluation map on the degree set does not reach all of K^X."""


# quotient models and zero loci

class DegreeInsufficient(PronyError):
    """Kernel data does not determine a quotient model at this degree.

    Recoverable: the degree-stabilization loop treats it as "go one higher".
    """


class NotZeroDimensional(PronyError):
    """Candidate multiplication matrices fail to commute."""


class IrrationalSpectrum(PronyError):
    """Characteristic polynomial does not split over the rationals."""


class RepeatedEigenvalues(PronyError):
    """Random linear forms kept colliding on the candidate points."""


class EigenFailure(PronyError):
    """Float eigensolve produced unusable spectral data."""


class ResidualTooLarge(PronyError):
    """Recovered points violate the model relations beyond tolerance."""


# reconstruction pipeline

class DegreeExhausted(PronyError):
    """Degree loop hit its cap without rank stabilization plus a locus."""


class VerificationFailed(PronyError):
    """Reconstructed sum does not reproduce the oracle on the check grid."""


class IrrationalSupport(PronyError):
    """Exact pipeline found support outside the rationals."""


class MissingSample(PronyError):
    """Sample table lacks required lattice indices; ``.indices`` lists them."""

    def __init__(self, indices):
        self.indices = tuple(tuple(i) for i in indices)
        shown = ", ".join(str(i) for i in self.indices)
        super().__init__(f"missing {len(self.indices)} sample(s) at {shown}")


# concrete structures and generators

class DomainMismatch(PronyError):
    """Structure needs a lattice the oracle does not provide."""


class SpecInvalid(PronyError):
    """Generator description fails validation."""


class DecodeFailure(PronyError):
    """Recovered support label is not in the image of the label map."""


class NonCommuting(PronyError):
    """Operator family is not pairwise commuting."""


class ZeroDirection(PronyError):
    """Projection along the zero vector."""


# relative reconstruction

class NotGroebner(PronyError):
    """Claimed Groebner basis fails the checks we can afford."""


class DegreeLeak(PronyError):
    """Normal form escapes the degree set, so no coordinate basis exists."""
