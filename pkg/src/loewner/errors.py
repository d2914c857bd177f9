"""Exception hierarchy shared by all modules."""


class LoewnerError(Exception):
    """Base class for every error raised by this package."""


class AmbiguousSide(LoewnerError, ValueError):
    """A point lies on the open removed slit and no side hint was given."""


# zipper-facing name for the same condition
SideAmbiguity = AmbiguousSide


class RadiusTooSmall(LoewnerError, ValueError):
    """Laurent sampling circle is too close to the singular set."""


class EmptySupport(LoewnerError, ValueError):
    """Boundary trace has a degenerate support interval."""


class DegenerateStep(LoewnerError, ValueError):
    """A zipper step would remove a slit of zero height."""


class InvalidSlit(LoewnerError, ValueError):
    """Polyline violates the slit invariants."""


class InvalidDrive(LoewnerError, ValueError):
    """Driving-function samples violate their invariants."""


class NumericalHealthError(LoewnerError, ArithmeticError):
    """A computation drifted into a numerically unhealthy regime."""


class StepUnderflow(NumericalHealthError):
    """Adaptive ODE step shrank below the allowed minimum."""
