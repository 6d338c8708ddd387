"""Exception hierarchy shared by all modules.

Exit-code grouping used by the CLI:
  * InputError        -> exit 1 (parse / invariant failures)
  * GeometricError    -> exit 2 (precondition failures of geometric operations)
  * BoundViolation    -> exit 3 (a theorem bound was exceeded: implementation bug)
"""


class TorusCyclesError(Exception):
    """Base class for all package errors."""


class InputError(TorusCyclesError):
    """Bad user input: parse errors and datatype invariant violations."""


class ParseError(InputError):
    pass


class InvariantViolation(InputError):
    pass


class GeometricError(TorusCyclesError):
    """A geometric precondition does not hold for the requested operation."""


class IdenticallyZero(GeometricError):
    """Root isolation was asked for the zero polynomial (continuum case)."""


class DegreeTooSmall(InputError):
    """Homogenization target below the polynomial degree."""


class CommonComponent(GeometricError):
    """Resultant vanished identically: the two curves share a factor."""


class CornerPoint(GeometricError):
    """Operation at a glued corner of the square (all four identify)."""


class DegenerateContinuum(GeometricError):
    """A closing difference vanished identically: continuum of periodic orbits."""


class ConstantTermNonzero(GeometricError):
    """Enumeration requires the first integral to vanish at the origin."""


class LeadingCoefficientsVanish(GeometricError):
    """Both corner coefficients of the top-degree form vanish."""


class DegenerateDenominator(GeometricError):
    """Closed-form quadratic analysis undefined (b = 0 or a = c)."""


class TraceError(GeometricError):
    """Base class for level-curve tracing failures."""


class StartOnCriticalPoint(TraceError):
    pass


class TangencyEncountered(TraceError):
    pass


class GradientFloorHit(TraceError):
    pass


class MaxCrossingsExceeded(TraceError):
    pass


class BoundViolation(TorusCyclesError):
    """A candidate count exceeded its theorem bound; indicates a bug."""
