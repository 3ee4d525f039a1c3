"""Exception hierarchy shared by the algebra, model and CLI layers."""

__all__ = [
    "CalogeroError",
    "DivisionNotExactError",
    "HarmonicityLostError",
    "IdentityViolationError",
    "IncompatibleRadialBaseError",
    "NegativeMultiplicityError",
    "NotPolynomialError",
    "NotSymmetricError",
    "RankMismatchError",
    "UnsupportedCouplingError",
    "UnsupportedRootSystemError",
    "VariableCountMismatchError",
    "VariantConstraintError",
    "VerificationError",
]


class CalogeroError(Exception):
    """Base class for every error raised by angular_calogero."""


class DivisionNotExactError(CalogeroError, ArithmeticError):
    """A polynomial division left a nonzero remainder."""


class NotPolynomialError(CalogeroError):
    """A radial expression has a fractional or negative power of r² left over."""


class NotSymmetricError(CalogeroError, ValueError):
    """An operation that requires a permutation-symmetric input got something else."""


class VariableCountMismatchError(CalogeroError, ValueError):
    """Two operands live in polynomial rings with different numbers of variables."""


class IncompatibleRadialBaseError(CalogeroError, ValueError):
    """Two radial polynomials have base exponents that do not differ by an integer."""


class VariantConstraintError(CalogeroError, ValueError):
    """A quantum-number vector violates the constraints of the requested model variant."""


class UnsupportedCouplingError(CalogeroError, ValueError):
    """The requested construction needs an integer coupling."""


class UnsupportedRootSystemError(CalogeroError, ValueError):
    """The root-system tag is not one of A, B, D or I2."""


class VerificationError(CalogeroError):
    """An exact identity that must hold by construction failed."""


class RankMismatchError(VerificationError):
    """An exact rank differs from the predicted dimension."""

    def __init__(self, what: str, rank: int, expected: int) -> None:
        """Initialize the error.

        Args:
            what: Human readable description of the family whose rank was computed
            rank: Computed exact rank
            expected: Predicted dimension

        """
        super().__init__(f"{what}: rank {rank}, expected {expected}")
        self.rank = rank
        self.expected = expected


class HarmonicityLostError(VerificationError):
    """A polynomial that should be annihilated by L(g) is not."""


class NegativeMultiplicityError(VerificationError):
    """A spin-content character that must be a true representation has a negative entry."""


class IdentityViolationError(VerificationError):
    """An operator identity evaluated on a concrete polynomial left a nonzero residual."""
