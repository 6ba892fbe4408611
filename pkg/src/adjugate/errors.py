"""Error taxonomy for the exact-geometry pipeline."""


class AdjugateError(Exception):
    """Base class for all structured errors raised by this package."""


class DivisibilityError(AdjugateError):
    """Exact polynomial division was requested but the divisor does not divide."""


class DegenerateEliminationError(AdjugateError):
    """Resultant elimination variable absent from both inputs."""


class FactorizationRequiredError(AdjugateError):
    """A reducible modulus was passed where a field extension is required."""


class SharedComponentError(AdjugateError):
    """Two curves share an irreducible component."""


class InfiniteMultiplicityError(AdjugateError):
    """Local intersection number is infinite (common component through the point)."""


class NonUniqueAdjointError(AdjugateError):
    """The adjoint linear system does not have a one-dimensional solution space."""


class UnsupportedDegenerationError(AdjugateError):
    """A residual/vertex degeneration outside the supported condition kinds."""


class NoResidualFreeArcError(AdjugateError):
    """No arc between adjacent vertices avoids the real residual points."""


class AmbiguousArcError(AdjugateError):
    """Both candidate arcs avoid the residual points; side selection is ambiguous."""


class PreconditionViolation(AdjugateError):
    """A documented operation precondition fails (e.g. collinear contact points)."""


class AlgorithmFailure(AdjugateError):
    """An internal solvability guarantee failed (bad input divisor or matrix)."""


class InconsistencyError(AdjugateError):
    """A scalar system that theory guarantees solvable turned out inconsistent."""


class RankZeroViolation(AdjugateError):
    """A point where the matrix of linear forms drops to rank zero."""


class Condition2Violation(AdjugateError):
    """The rank-one locus condition fails; a shear basis change may repair it."""


class DeformationLeavesChartError(AdjugateError):
    """The requested basis change leaves the valid parametrization chart."""


class InputParseError(AdjugateError):
    """Malformed input file or polynomial literal."""
