"""Exception types shared across the package.

Every failure mode that certification code can hit gets its own class so
callers (and the CLI exit paths) can name the violated invariant precisely.
"""


class EpwforgeError(Exception):
    """Base class for all package errors."""


class ZeroInverse(EpwforgeError):
    """Inversion of the zero field element."""


class BadDenominator(EpwforgeError):
    """A denominator is divisible by the reduction prime, so the chosen
    prime cannot reduce this input."""


class NonUnitDeterminant(EpwforgeError):
    """A group generator has determinant that is not a root of unity."""


class ExplosionGuard(EpwforgeError):
    """Group enumeration exceeded the configured element bound (wrong
    generators, or entries growing without bound)."""


class ColumnMismatch(EpwforgeError):
    """The conjugacy-class representative words do not occupy distinct
    classes, so class-to-column matching is impossible."""


class NotIdempotent(EpwforgeError):
    """A constructed projector fails P*P == P (character/class mismatch)."""


class NotLagrangian(EpwforgeError):
    """Extracted subspace is not isotropic for the symplectic form."""


class NotInvariant(EpwforgeError):
    """Extracted subspace is not preserved by the group generators."""


class NotARepresentation(EpwforgeError):
    """The matrix solve defining a subrepresentation is inconsistent."""


class NotDivisible(EpwforgeError):
    """Exact polynomial division failed; carries the remainder witness."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class DegenerateDeterminant(EpwforgeError):
    """The chart determinant vanishes identically (the degeneracy locus is
    all of projective space for this subspace)."""


class NotHomogeneous(EpwforgeError):
    """Operation requires a homogeneous ideal/polynomial."""


class DegreeBudgetExceeded(EpwforgeError):
    """A Groebner computation hit the configured degree cap.  The run can
    be resumed from its checkpoint with a larger budget."""

    def __init__(self, message, checkpoint_path=None):
        super().__init__(message)
        self.checkpoint_path = checkpoint_path


class RankCollapse(EpwforgeError):
    """Residue reduction dropped the rank of a basis (unlucky prime)."""


class SchemaVersionMismatch(EpwforgeError):
    """A serialized artifact carries an unsupported schema version."""
