"""Exception types.

``InternalInconsistency`` means a computation contradicted a proven fact
about nondegenerate quadrics; the CLI maps it to exit code 2.
"""


class CrautError(Exception):
    pass


class QuadricFormatError(CrautError, ValueError):
    """Malformed quadric (or algebra) data."""


class DegenerateQuadricError(CrautError, ValueError):
    pass


class InternalInconsistency(CrautError, RuntimeError):
    pass


class ShapeViolation(InternalInconsistency):
    """A tangent field does not have the predicted normal-form shape."""
