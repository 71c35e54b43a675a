"""High-level meshing operations: uniform, field-driven, and DOF-matched."""

from __future__ import annotations

import numpy as np

from ..geometry import DomainSpec
from .quads import MeshingError, QuadMesh, quadrangulate, smooth_interior
from .refine import triangulate_domain
from .sizing import SizingField

DOF_WINDOW = 0.05
DOF_BISECTION_LIMIT = 40
SCALE_RANGE = (0.25, 4.0)


def mesh_from_field(domain: DomainSpec, field: SizingField,
                    provenance: str = "field") -> QuadMesh:
    """All-quad mesh conforming to the sizing field.

    Triangulates, records the field value at each parent triangle centroid
    as the element's realized size, splits to quads and smooths interior
    vertices (3 damped Laplacian passes).
    """
    tri = triangulate_domain(domain, field)
    sizes = field(tri.centroids())
    mesh = quadrangulate(tri, elem_size=sizes, provenance=provenance)
    mesh = smooth_interior(mesh)
    mesh.validate()
    return mesh


def mesh_uniform(domain: DomainSpec, h: float) -> QuadMesh:
    """Near-uniform mesh at constant target edge length h."""
    field = SizingField.from_constant(h)
    return mesh_from_field(domain, field, provenance=f"uniform h={h:g}")


def domain_area(domain: DomainSpec) -> float:
    area = domain.outer.signed_area
    for hole in domain.holes:
        area -= abs(hole.signed_area)
    return area


def uniform_h_for_dofs(domain: DomainSpec, target_dofs: int) -> float:
    """Rough constant edge length whose uniform mesh has ~target_dofs."""
    area = max(domain_area(domain), 1e-6)
    return float(np.sqrt(14.0 * area / max(target_dofs, 16)))


def dof_match(domain: DomainSpec, field: SizingField, target_dofs: int) -> QuadMesh:
    """Scale the field until mesh DOFs land within 5% of the target.

    Tries the unscaled field first, then bisects a global scale factor in
    [0.25, 4.0]. DOFs decrease as the scale (hence element size) grows.
    """
    if target_dofs <= 8:
        raise MeshingError("target DOF count too small to match")

    best_mesh = None
    best_ratio = np.inf

    def attempt(scale: float):
        nonlocal best_mesh, best_ratio
        mesh = mesh_from_field(domain, field.scaled(scale),
                               provenance=f"dof-matched x{scale:.4f}")
        dofs = mesh.num_dofs()
        ratio = abs(dofs - target_dofs) / target_dofs
        if ratio < best_ratio:
            best_ratio = ratio
            best_mesh = mesh
        return dofs, ratio

    dofs, ratio = attempt(1.0)
    if ratio < DOF_WINDOW:
        return best_mesh

    lo, hi = SCALE_RANGE
    # Narrow the bracket with the scale-1 probe: too many DOFs -> grow elements.
    if dofs > target_dofs:
        lo = 1.0
    else:
        hi = 1.0
    for _ in range(DOF_BISECTION_LIMIT):
        mid = 0.5 * (lo + hi)
        dofs, ratio = attempt(mid)
        if ratio < DOF_WINDOW:
            return best_mesh
        if dofs > target_dofs:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-4:
            break
    raise MeshingError(
        f"DOF matching failed: target {target_dofs}, best relative gap {best_ratio:.3f}")
