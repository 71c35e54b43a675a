"""Quadrilateral mesh container, tri-to-quad subdivision and point location."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.spatial import cKDTree

log = logging.getLogger(__name__)

TAG_FREE = 0
TAG_DIRICHLET = 1
TAG_NEUMANN = 2
TAG_HOLE = 3
TAG_NAMES = {TAG_FREE: "free", TAG_DIRICHLET: "dirichlet",
             TAG_NEUMANN: "neumann", TAG_HOLE: "hole"}
TAG_CODES = {v: k for k, v in TAG_NAMES.items()}


class MeshingError(Exception):
    """Raised when mesh generation cannot satisfy its contracts."""


@dataclass
class TriangleMesh:
    """Conforming triangle mesh with tagged boundary subsegments."""

    points: np.ndarray          # (n, 2) float64
    triangles: np.ndarray       # (t, 3) int32, CCW
    segments: np.ndarray        # (s, 2) int32, ordered along the boundary loops
    segment_tags: np.ndarray    # (s,) int8

    def longest_edges(self) -> np.ndarray:
        p = self.points[self.triangles]
        return np.max(np.stack([
            np.linalg.norm(p[:, 1] - p[:, 0], axis=1),
            np.linalg.norm(p[:, 2] - p[:, 1], axis=1),
            np.linalg.norm(p[:, 0] - p[:, 2], axis=1),
        ]), axis=0)

    def centroids(self) -> np.ndarray:
        return self.points[self.triangles].mean(axis=1)

    def edge_set(self) -> set[tuple[int, int]]:
        out = set()
        for tri in self.triangles:
            for i in range(3):
                a, b = int(tri[i]), int(tri[(i + 1) % 3])
                out.add((min(a, b), max(a, b)))
        return out


@dataclass
class QuadMesh:
    """Conforming all-quad mesh with tagged boundary edges.

    ``boundary_edges`` rows are ordered along the domain traversal (outer
    loop counter-clockwise, holes clockwise) so the outward normal of edge
    (a, b) is the right-hand normal of b - a. ``elem_size`` optionally
    records the sizing-field value each element was built to match.
    """

    vertices: np.ndarray        # (n, 2) float64
    quads: np.ndarray           # (q, 4) int32, CCW
    boundary_edges: np.ndarray  # (b, 2) int32
    boundary_tags: np.ndarray   # (b,) int8
    provenance: str = ""
    elem_size: np.ndarray | None = None

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_quads(self) -> int:
        return len(self.quads)

    def corner_jacobians(self) -> np.ndarray:
        """Bilinear-map Jacobian determinant at each quad corner, shape (q, 4)."""
        v = self.vertices[self.quads]  # (q, 4, 2)
        out = np.empty((len(self.quads), 4))
        for k in range(4):
            e1 = v[:, (k + 1) % 4] - v[:, k]
            e2 = v[:, (k - 1) % 4] - v[:, k]
            out[:, k] = (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]) / 4.0
        return out

    def element_diameters(self) -> np.ndarray:
        """Max pairwise corner distance per quad."""
        v = self.vertices[self.quads]
        best = np.zeros(len(self.quads))
        for i in range(4):
            for j in range(i + 1, 4):
                best = np.maximum(best, np.linalg.norm(v[:, i] - v[:, j], axis=1))
        return best

    def element_sizes(self) -> np.ndarray:
        """Per-element local mesh size.

        The recorded sizing-field value when available, otherwise estimated
        as twice the longest quad edge (the parent triangle's edge length
        under midpoint subdivision).
        """
        if self.elem_size is not None:
            return self.elem_size
        v = self.vertices[self.quads]
        longest = np.zeros(len(self.quads))
        for i in range(4):
            e = np.linalg.norm(v[:, (i + 1) % 4] - v[:, i], axis=1)
            longest = np.maximum(longest, e)
        return 2.0 * longest

    def centroids(self) -> np.ndarray:
        return self.vertices[self.quads].mean(axis=1)

    def _edge_counts(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {}
        for quad in self.quads:
            for i in range(4):
                a, b = int(quad[i]), int(quad[(i + 1) % 4])
                key = (min(a, b), max(a, b))
                counts[key] = counts.get(key, 0) + 1
        return counts

    def boundary_vertex_mask(self) -> np.ndarray:
        mask = np.zeros(self.num_vertices, dtype=bool)
        mask[self.boundary_edges.ravel()] = True
        return mask

    def dirichlet_vertex_mask(self) -> np.ndarray:
        mask = np.zeros(self.num_vertices, dtype=bool)
        dir_edges = self.boundary_edges[self.boundary_tags == TAG_DIRICHLET]
        mask[dir_edges.ravel()] = True
        return mask

    def num_dofs(self) -> int:
        """Degrees of freedom: two per vertex not fixed by the Dirichlet edge."""
        return 2 * int((~self.dirichlet_vertex_mask()).sum())

    def validate(self) -> None:
        if (self.corner_jacobians() <= 0).any():
            bad = int(np.argmin(self.corner_jacobians().min(axis=1)))
            raise MeshingError(f"quad {bad} is not positively oriented at all corners")
        counts = self._edge_counts()
        boundary = {k for k, c in counts.items() if c == 1}
        if any(c > 2 for c in counts.values()):
            raise MeshingError("non-conforming mesh: an edge is shared by >2 quads")
        declared = {(min(int(a), int(b)), max(int(a), int(b)))
                    for a, b in self.boundary_edges}
        if boundary != declared:
            raise MeshingError("declared boundary edges do not match the quad boundary")

    def save(self, path) -> None:
        lines = [f"vertices {self.num_vertices}"]
        lines += [f"{x:.17g} {y:.17g}" for x, y in self.vertices]
        lines.append(f"quads {self.num_quads}")
        lines += [" ".join(str(int(i)) for i in q) for q in self.quads]
        lines.append(f"bedges {len(self.boundary_edges)}")
        lines += [f"{int(a)} {int(b)} {TAG_NAMES[int(t)]}"
                  for (a, b), t in zip(self.boundary_edges, self.boundary_tags)]
        if self.elem_size is not None:
            lines.append(f"esize {self.num_quads}")
            lines += [f"{s:.17g}" for s in self.elem_size]
        with open(path, "w") as f:
            f.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path) -> "QuadMesh":
        with open(path) as f:
            tokens = f.read().split()
        pos = 0

        def take():
            nonlocal pos
            tok = tokens[pos]
            pos += 1
            return tok

        if take() != "vertices":
            raise ValueError("mesh file must start with 'vertices'")
        n = int(take())
        vertices = np.array([[float(take()), float(take())] for _ in range(n)])
        if take() != "quads":
            raise ValueError("expected 'quads' section")
        m = int(take())
        quads = np.array([[int(take()) for _ in range(4)] for _ in range(m)],
                         dtype=np.int32)
        if take() != "bedges":
            raise ValueError("expected 'bedges' section")
        b = int(take())
        edges = np.empty((b, 2), dtype=np.int32)
        tags = np.empty(b, dtype=np.int8)
        for i in range(b):
            edges[i, 0] = int(take())
            edges[i, 1] = int(take())
            tags[i] = TAG_CODES[take()]
        elem_size = None
        if pos < len(tokens) and tokens[pos] == "esize":
            take()
            k = int(take())
            elem_size = np.array([float(take()) for _ in range(k)])
        return cls(vertices=vertices, quads=quads, boundary_edges=edges,
                   boundary_tags=tags, elem_size=elem_size)


def quadrangulate(tri: TriangleMesh, elem_size: np.ndarray | None = None,
                  provenance: str = "") -> QuadMesh:
    """Split each triangle into 3 quads via its centroid and edge midpoints."""
    points = [p for p in tri.points]
    mid_of: dict[tuple[int, int], int] = {}

    def midpoint(a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        if key not in mid_of:
            points.append(0.5 * (tri.points[a] + tri.points[b]))
            mid_of[key] = len(points) - 1
        return mid_of[key]

    quads = np.empty((3 * len(tri.triangles), 4), dtype=np.int32)
    for t, (v0, v1, v2) in enumerate(tri.triangles):
        m01 = midpoint(v0, v1)
        m12 = midpoint(v1, v2)
        m20 = midpoint(v2, v0)
        points.append(tri.points[[v0, v1, v2]].mean(axis=0))
        c = len(points) - 1
        quads[3 * t + 0] = (v0, m01, c, m20)
        quads[3 * t + 1] = (v1, m12, c, m01)
        quads[3 * t + 2] = (v2, m20, c, m12)

    edges = np.empty((2 * len(tri.segments), 2), dtype=np.int32)
    tags = np.empty(2 * len(tri.segments), dtype=np.int8)
    for s, ((a, b), tag) in enumerate(zip(tri.segments, tri.segment_tags)):
        m = mid_of[(min(int(a), int(b)), max(int(a), int(b)))]
        edges[2 * s + 0] = (a, m)
        edges[2 * s + 1] = (m, b)
        tags[2 * s: 2 * s + 2] = tag

    sizes = None if elem_size is None else np.repeat(np.asarray(elem_size, dtype=float), 3)
    return QuadMesh(vertices=np.array(points), quads=quads, boundary_edges=edges,
                    boundary_tags=tags, provenance=provenance, elem_size=sizes)


def smooth_interior(mesh: QuadMesh, passes: int = 3, damping: float = 0.5) -> QuadMesh:
    """Damped Laplacian smoothing of interior vertices, Jacobian-safe.

    Vertices whose neighborhood would lose positive orientation revert to
    their original positions.
    """
    n = mesh.num_vertices
    rows, cols = [], []
    for quad in mesh.quads:
        for i in range(4):
            a, b = int(quad[i]), int(quad[(i + 1) % 4])
            rows += [a, b]
            cols += [b, a]
    adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n)).tocsr()
    adj.data[:] = 1.0  # duplicate entries collapse to simple adjacency
    degree = np.asarray(adj.sum(axis=1)).ravel()
    movable = ~mesh.boundary_vertex_mask()

    original = mesh.vertices.copy()
    v = mesh.vertices.copy()
    for _ in range(passes):
        avg = adj @ v / degree[:, None]
        v[movable] = (1 - damping) * v[movable] + damping * avg[movable]

    out = QuadMesh(vertices=v, quads=mesh.quads, boundary_edges=mesh.boundary_edges,
                   boundary_tags=mesh.boundary_tags, provenance=mesh.provenance,
                   elem_size=mesh.elem_size)
    for _ in range(10):
        jac = out.corner_jacobians()
        bad = np.nonzero((jac <= 1e-14).any(axis=1))[0]
        if len(bad) == 0:
            return out
        bad_vertices = np.unique(out.quads[bad].ravel())
        out.vertices[bad_vertices] = original[bad_vertices]
    out.vertices[:] = original
    return out


def _bilinear_shape(xi: np.ndarray) -> np.ndarray:
    """Q4 shape functions at reference coordinates, shape (..., 4)."""
    x, y = xi[..., 0], xi[..., 1]
    return np.stack([(1 - x) * (1 - y), (1 + x) * (1 - y),
                     (1 + x) * (1 + y), (1 - x) * (1 + y)], axis=-1) / 4.0


class PointLocator:
    """Locates query points in a quad mesh and interpolates nodal fields."""

    def __init__(self, mesh: QuadMesh):
        self.mesh = mesh
        diam = mesh.element_diameters()
        self.cell = max(float(diam.max()), 1e-6)
        self.grid: dict[tuple[int, int], list[int]] = {}
        v = mesh.vertices[mesh.quads]
        lo = np.floor(v.min(axis=1) / self.cell).astype(int)
        hi = np.floor(v.max(axis=1) / self.cell).astype(int)
        for q in range(mesh.num_quads):
            for ix in range(lo[q, 0], hi[q, 0] + 1):
                for iy in range(lo[q, 1], hi[q, 1] + 1):
                    self.grid.setdefault((ix, iy), []).append(q)
        self.centroid_tree = cKDTree(mesh.centroids())

    def _invert(self, quad_ids: np.ndarray, pts: np.ndarray):
        """Newton inversion of the bilinear map, vectorized over pairs."""
        corners = self.mesh.vertices[self.mesh.quads[quad_ids]]  # (k, 4, 2)
        xi = np.zeros((len(pts), 2))
        for _ in range(12):
            shp = _bilinear_shape(xi)                      # (k, 4)
            pos = np.einsum("kc,kcd->kd", shp, corners)
            r = pos - pts
            x, y = xi[:, 0], xi[:, 1]
            dn_dx = np.stack([-(1 - y), (1 - y), (1 + y), -(1 + y)], axis=-1) / 4.0
            dn_dy = np.stack([-(1 - x), -(1 + x), (1 + x), (1 - x)], axis=-1) / 4.0
            j11 = np.einsum("kc,kc->k", dn_dx, corners[:, :, 0])
            j12 = np.einsum("kc,kc->k", dn_dy, corners[:, :, 0])
            j21 = np.einsum("kc,kc->k", dn_dx, corners[:, :, 1])
            j22 = np.einsum("kc,kc->k", dn_dy, corners[:, :, 1])
            det = j11 * j22 - j12 * j21
            det = np.where(np.abs(det) < 1e-300, 1e-300, det)
            dx = (j22 * r[:, 0] - j12 * r[:, 1]) / det
            dy = (-j21 * r[:, 0] + j11 * r[:, 1]) / det
            xi[:, 0] -= dx
            xi[:, 1] -= dy
            np.clip(xi, -2.0, 2.0, out=xi)
        shp = _bilinear_shape(xi)
        pos = np.einsum("kc,kcd->kd", shp, corners)
        resid = np.linalg.norm(pos - pts, axis=1)
        return xi, resid

    def locate(self, points: np.ndarray, tol: float = 1e-8):
        """Containing quad index and reference coords for each point.

        Points that land in no element (boundary roundoff, queries slightly
        outside) fall back to the nearest element with clamped coordinates.
        Returns (quad_idx, xi, fallback_mask).
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        nq = len(pts)
        pair_pt, pair_quad, pair_owner = [], [], []
        for i, p in enumerate(pts):
            key = (int(np.floor(p[0] / self.cell)), int(np.floor(p[1] / self.cell)))
            for q in self.grid.get(key, ()):
                pair_pt.append(p)
                pair_quad.append(q)
                pair_owner.append(i)
        found = np.full(nq, -1, dtype=np.int64)
        found_xi = np.zeros((nq, 2))
        if pair_quad:
            pair_pt = np.array(pair_pt)
            pair_quad = np.array(pair_quad)
            pair_owner = np.array(pair_owner)
            xi, resid = self._invert(pair_quad, pair_pt)
            ok = (np.abs(xi) <= 1.0 + tol).all(axis=1) & (resid <= 1e-9)
            for k in np.nonzero(ok)[0]:
                i = pair_owner[k]
                if found[i] < 0 or pair_quad[k] < found[i]:
                    found[i] = pair_quad[k]
                    found_xi[i] = xi[k]
        misses = np.nonzero(found < 0)[0]
        fallback = np.zeros(nq, dtype=bool)
        if len(misses) > 0:
            fallback[misses] = True
            _, nearest = self.centroid_tree.query(pts[misses])
            xi, _ = self._invert(np.asarray(nearest, dtype=np.int64).ravel(),
                                 pts[misses])
            found[misses] = np.asarray(nearest).ravel()
            found_xi[misses] = np.clip(xi, -1.0, 1.0)
            log.debug("point location fell back to nearest element for %d of %d points",
                      len(misses), nq)
        return found, found_xi, fallback

    def interpolate(self, nodal_values: np.ndarray, points: np.ndarray) -> np.ndarray:
        """Bilinear interpolation of per-vertex values at query points."""
        quad_idx, xi, _ = self.locate(points)
        shp = _bilinear_shape(xi)                                  # (k, 4)
        vals = np.asarray(nodal_values)
        squeeze = vals.ndim == 1
        if squeeze:
            vals = vals[:, None]
        corner_vals = vals[self.mesh.quads[quad_idx]]              # (k, 4, d)
        out = np.einsum("kc,kcd->kd", shp, corner_vals)
        return out[:, 0] if squeeze else out
