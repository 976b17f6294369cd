"""Exception hierarchy shared by all fredgap modules."""


class FredgapError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FredgapError):
    """Argument outside the mathematical domain of an operation."""


class PoleAtC(DomainError):
    """Lower parameter of a hypergeometric series is a nonpositive integer."""


class PoleAtNonpositiveInteger(DomainError):
    """Gamma function evaluated at 0, -1, -2, ..."""


class NoConvergence(FredgapError):
    """A series or transformation failed to reach the requested tolerance."""


class InvariantViolation(FredgapError):
    """A runtime check of a proved identity (realness, nilpotency, ...) failed."""


class NearDiagonal(FredgapError):
    """kernel_eval called with |x - y| below the diagonal threshold."""


class OrderTooLarge(FredgapError):
    """Quadrature order outside the supported range."""


class InvalidUnion(FredgapError):
    """Malformed interval union, or one incompatible with the kernel."""


class SingularResolvent(FredgapError):
    """1 - K is numerically singular (an LU pivot below threshold)."""


class OracleInapplicable(FredgapError):
    """Truncated Fredholm series requested outside its validity regime."""


class PoleCollision(FredgapError):
    """Two poles of a residue system are too close to separate."""


class InvariantDrift(FredgapError):
    """A conserved quantity drifted beyond tolerance along a flow."""


class DegenerateData(FredgapError):
    """Residue-matrix reconstruction hit an inconsistent or degenerate system."""


class ResidualDrift(FredgapError):
    """Integrated trajectory left the manifold of the undifferentiated equation."""


class BlowUp(FredgapError):
    """Trajectory escaped (left the Hastings-McLeod branch, or |state| exploded)."""
