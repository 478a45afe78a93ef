"""Exception hierarchy shared by all modules."""


class MixedGSVError(Exception):
    """Base class for every error raised by the package."""


class DimensionError(MixedGSVError, ValueError):
    """A point, vector or index does not match the number of variables."""


class ParseError(MixedGSVError, ValueError):
    """Syntax or semantic error in a mixed-polynomial expression."""

    def __init__(self, message, line=1, column=1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class CriticalPointError(MixedGSVError):
    """Both df and d̄f vanish at the sample point."""


class DependentFrameError(MixedGSVError, ValueError):
    """Vectors that must span a complex 2-frame are C-dependent."""


class ConvergenceError(MixedGSVError):
    """Newton iteration failed to converge."""


class DegenerateJacobianError(ConvergenceError):
    """The Jacobian of the link equations lost rank."""


class TracingError(MixedGSVError):
    """Continuation along a link component failed."""


class NotOnVarietyError(MixedGSVError, ValueError):
    """The point does not lie on V_f within tolerance."""


class TransportError(MixedGSVError):
    """Frame interpolation or vector transport became ill-defined."""


class RefinementNeeded(MixedGSVError):
    """Sampling is too coarse to resolve a phase; refine and retry."""


class InconsistencyError(MixedGSVError):
    """Two computations that must agree returned different integers."""


class UnsupportedDimensionError(MixedGSVError, NotImplementedError):
    """The requested computation is only available for n = 2."""
