"""Exception types shared across the toolchain.

Plain arithmetic failures reuse the builtins: exact division by zero
raises ZeroDivisionError and float conversion of an oversized rational
raises OverflowError.  Everything the pipeline itself can reject gets a
class below so the CLI can map failures to exit codes.
"""


class FasimError(Exception):
    """Base class for all toolchain errors."""


class MalformedNumber(FasimError, ValueError):
    """Numeric text does not match the decimal/scientific grammar."""


class EmptyInput(FasimError, ValueError):
    """Numeric text was empty."""


class NoConvergence(FasimError, ArithmeticError):
    """Iterative root finding hit its iteration cap."""


class DegreeZero(FasimError, ValueError):
    """Root finding requires a polynomial of degree >= 1."""


class DegenerateODE(FasimError, ValueError):
    """The output side of a differential equation is identically zero."""


class ZeroDenominator(FasimError, ValueError):
    """A transfer function denominator is the zero polynomial."""


class TailUnbounded(FasimError, ValueError):
    """Re(s) does not exceed the signal's exponential growth rate."""


class QuadratureFailure(FasimError, ArithmeticError):
    """Adaptive quadrature could not reach the requested tolerance."""


class PoleOnAxis(FasimError, ValueError):
    """Frequency response requested at (or numerically too close to) a pole."""


class RepeatedPole(FasimError, ValueError):
    """Partial fractions support simple poles only."""


class NotStrictlyProper(FasimError, ValueError):
    """Residue expansion needs deg(num) < deg(den)."""


class MissingComponent(FasimError, ValueError):
    """A filter kind requires a component that was not supplied."""


class NonPositiveComponent(FasimError, ValueError):
    """Component values must be strictly positive."""


class PoleAtZero(FasimError, ZeroDivisionError):
    """DC gain requested for a transfer function with a pole at s = 0."""


class MalformedXML(FasimError, ValueError):
    """Input is not a well-formed XML document."""


class SchemaViolation(FasimError, ValueError):
    """Well-formed XML that does not satisfy the coefficient schema."""


class StiffnessWarning(UserWarning):
    """Simulation step size is too coarse for the fastest pole."""
