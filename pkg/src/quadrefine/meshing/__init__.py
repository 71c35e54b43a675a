"""All-quad meshing of planar domains driven by sizing fields."""

from .sizing import H_MIN, H_MAX, SizingField
from .quads import (
    TAG_FREE,
    TAG_DIRICHLET,
    TAG_NEUMANN,
    TAG_HOLE,
    TAG_NAMES,
    MeshingError,
    TriangleMesh,
    QuadMesh,
    PointLocator,
    quadrangulate,
)
from .refine import triangulate_domain
from .ops import mesh_uniform, mesh_from_field, dof_match, uniform_h_for_dofs

__all__ = [
    "H_MIN", "H_MAX", "SizingField",
    "TAG_FREE", "TAG_DIRICHLET", "TAG_NEUMANN", "TAG_HOLE", "TAG_NAMES",
    "MeshingError", "TriangleMesh", "QuadMesh", "PointLocator", "quadrangulate",
    "triangulate_domain",
    "mesh_uniform", "mesh_from_field", "dof_match", "uniform_h_for_dofs",
]
