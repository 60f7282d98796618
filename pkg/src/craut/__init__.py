"""Exact computation of automorphism algebras of nondegenerate CR model quadrics."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CrautError,
    DegenerateQuadricError,
    InternalInconsistency,
    QuadricFormatError,
    ShapeViolation,
)
from .exact import GaussianRational, format_complex, nullspace, parse_complex, rank, solve  # noqa: E402
from .quadric import Quadric, catalog, heisenberg, last_quadric, palinchak_q5, random_nondegenerate, validate  # noqa: E402
from .solver import (  # noqa: E402
    VectorField,
    bracket,
    exceptional_via_a,
    full_algebra,
    graded_component,
    is_exceptional,
    is_rigid,
    nonrigid_via_a,
)

__all__ = [
    "CrautError",
    "DegenerateQuadricError",
    "InternalInconsistency",
    "QuadricFormatError",
    "ShapeViolation",
    "GaussianRational",
    "format_complex",
    "parse_complex",
    "rank",
    "nullspace",
    "solve",
    "Quadric",
    "catalog",
    "heisenberg",
    "last_quadric",
    "palinchak_q5",
    "random_nondegenerate",
    "validate",
    "VectorField",
    "bracket",
    "graded_component",
    "full_algebra",
    "is_rigid",
    "is_exceptional",
    "nonrigid_via_a",
    "exceptional_via_a",
]
