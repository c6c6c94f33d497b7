class Error(Exception):
    """Generic error class for invalid pyrgrow operations."""

    # reset the module so the user sees the public name
    __module__ = 'pyrgrow'


class ConfigurationError(Error):
    """Raised on invalid configurations."""
    __module__ = 'pyrgrow'


class InputError(Error):
    """Raised on malformed input data (rationals, points, JSON)."""
    __module__ = 'pyrgrow'


class CertificateError(InputError):
    """Raised when a certificate file cannot be read."""
    __module__ = 'pyrgrow'


class InvalidStep(Error):
    """Raised when a step is applied to a polytope it does not extend."""
    __module__ = 'pyrgrow'


class GeometryError(Error):
    """Raised when geometric preconditions of an operation fail."""
    __module__ = 'pyrgrow'


class NotAVeeInstance(GeometryError):
    """Raised when two polytopes cannot be glued along a common facet."""
    __module__ = 'pyrgrow'


class NotTraversing(GeometryError):
    """Raised when a hyperplane does not cross every ray of a cone."""
    __module__ = 'pyrgrow'


class NoSeparatingFunctional(GeometryError):
    """Raised when a face cannot be moved to infinity."""
    __module__ = 'pyrgrow'


class InvalidFrame(GeometryError):
    """Raised on a degenerate frame for a slab homothety."""
    __module__ = 'pyrgrow'


class CrossesInfinity(GeometryError):
    """Raised when a projective map sends a point to infinity."""
    __module__ = 'pyrgrow'


class NotNested(GeometryError):
    """Raised when the smaller polytope is not inside the larger one."""
    __module__ = 'pyrgrow'


class UnsupportedDimension(GeometryError):
    """Raised when no construction exists for the given dimension."""
    __module__ = 'pyrgrow'


class ConstructionError(Error):
    """Raised when a constructed chain fails its own verification.

    These errors indicate a bug in a construction rather than a bad
    input.
    """
    __module__ = 'pyrgrow'


class LiftFailed(ConstructionError):
    """Raised when a lifted step is not a pyramidal extension."""
    __module__ = 'pyrgrow'


class StepInvalidAfterMap(ConstructionError):
    """Raised when a pushed-forward step is not a pyramidal extension."""
    __module__ = 'pyrgrow'


class NoProgress(ConstructionError):
    """Raised when an iterative construction stops making progress."""
    __module__ = 'pyrgrow'


class RecursionBound(ConstructionError):
    """Raised when a recursive construction exceeds its depth guard."""
    __module__ = 'pyrgrow'


class SliceFailed(ConstructionError):
    """Raised when no usable cross-section of a corner cone is found."""
    __module__ = 'pyrgrow'


class ExhaustedError(Error):
    """Raised when a search for a small enough parameter gives up."""
    __module__ = 'pyrgrow'


class ThetaTooLarge(ExhaustedError):
    """Raised when rotated half-spaces no longer contain the polytope."""
    __module__ = 'pyrgrow'


class OffsetExhausted(ExhaustedError):
    """Raised when no halved offset gives a verified S-growth."""
    __module__ = 'pyrgrow'


class LambdaExhausted(ExhaustedError):
    """Raised when no homothety ratio verifies for a main sequence term."""
    __module__ = 'pyrgrow'


class MuExhausted(ExhaustedError):
    """Raised when no scaling of a blown corner apex extends the polytope."""
    __module__ = 'pyrgrow'


class BudgetExhausted(ExhaustedError):
    """Raised when a defect budget cannot be met within the caps."""
    __module__ = 'pyrgrow'


class ToleranceNotReached(ExhaustedError):
    """Raised when an approach stops before coming within tolerance."""
    __module__ = 'pyrgrow'


class DivergenceSuspected(ExhaustedError):
    """Raised when an iteration expected to converge does not."""
    __module__ = 'pyrgrow'
