"""Sizing-driven conforming Delaunay triangulation of polygonal domains.

The mesher re-triangulates a growing point set with Delaunay passes:
boundary subsegments are split until they are present and unencroached
(no vertex strictly inside a subsegment's diametral circle, which makes the
subsegment a Delaunay edge), then interior edges are split and circumcenters
inserted until every inside triangle's longest edge is below the sizing
field at its centroid and the minimum angle target is met where achievable.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import Delaunay, cKDTree

from ..geometry import DomainSpec
from .quads import (MeshingError, TriangleMesh, TAG_FREE, TAG_DIRICHLET,
                    TAG_NEUMANN, TAG_HOLE)
from .sizing import SizingField

MIN_ANGLE_DEG = 20.0
SHARP_CORNER_DEG = 45.0
MAX_TRIANGLES = 200_000
MAX_PASSES = 400


def _edge_codes(pairs: np.ndarray, n: int) -> np.ndarray:
    a = np.minimum(pairs[:, 0], pairs[:, 1]).astype(np.int64)
    b = np.maximum(pairs[:, 0], pairs[:, 1]).astype(np.int64)
    return a * n + b


def _tri_edges(tris: np.ndarray) -> np.ndarray:
    return np.concatenate([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]])


def _circumcenters(p0, p1, p2):
    d = 2 * ((p1[:, 0] - p0[:, 0]) * (p2[:, 1] - p0[:, 1])
             - (p1[:, 1] - p0[:, 1]) * (p2[:, 0] - p0[:, 0]))
    d = np.where(np.abs(d) < 1e-300, 1e-300, d)
    n1 = np.einsum("ij,ij->i", p1 - p0, p1 + p0)
    n2 = np.einsum("ij,ij->i", p2 - p0, p2 + p0)
    ux = (n1 * (p2[:, 1] - p0[:, 1]) - n2 * (p1[:, 1] - p0[:, 1])) / d
    uy = (n2 * (p1[:, 0] - p0[:, 0]) - n1 * (p2[:, 0] - p0[:, 0])) / d
    return np.column_stack([ux, uy])


def _min_angles(p0, p1, p2):
    """Minimum interior angle of each triangle, radians."""
    a = np.linalg.norm(p1 - p2, axis=1)
    b = np.linalg.norm(p0 - p2, axis=1)
    c = np.linalg.norm(p0 - p1, axis=1)
    angles = []
    for opp, s1, s2 in ((a, b, c), (b, a, c), (c, a, b)):
        cosv = (s1 ** 2 + s2 ** 2 - opp ** 2) / np.maximum(2 * s1 * s2, 1e-300)
        angles.append(np.arccos(np.clip(cosv, -1.0, 1.0)))
    return np.min(np.stack(angles), axis=0)


class _Frontier:
    """Mutable point/segment state threaded through the refinement passes."""

    def __init__(self, domain: DomainSpec):
        self.domain = domain
        pts: list[np.ndarray] = []
        segs: list[tuple[int, int, int]] = []
        for loop_idx, (verts, kind) in enumerate(domain.boundary_loops()):
            base = len(pts)
            pts.extend(verts)
            n = len(verts)
            for i in range(n):
                a, b = base + i, base + (i + 1) % n
                if kind == "hole":
                    tag = TAG_HOLE
                elif i == domain.dirichlet_edge and loop_idx == 0:
                    tag = TAG_DIRICHLET
                elif i == domain.neumann_edge and loop_idx == 0:
                    tag = TAG_NEUMANN
                else:
                    tag = TAG_FREE
                segs.append((a, b, tag))
        self.points = pts
        self.segments = segs
        self.n_input = len(pts)
        angles = np.degrees(domain.outer.interior_angles())
        self.sharp = set(np.nonzero(angles < SHARP_CORNER_DEG)[0])

    def add_point(self, p: np.ndarray) -> int:
        self.points.append(np.asarray(p, dtype=float))
        return len(self.points) - 1

    def split_segment(self, idx: int) -> None:
        a, b, tag = self.segments[idx]
        mid = 0.5 * (self.points[a] + self.points[b])
        m = self.add_point(mid)
        self.segments[idx] = (a, m, tag)
        self.segments.append((m, b, tag))

    def split_to_size(self, field: SizingField) -> None:
        """Pre-split boundary segments to the local target length."""
        i = 0
        while i < len(self.segments):
            a, b, _ = self.segments[i]
            pa, pb = self.points[a], self.points[b]
            mid = 0.5 * (pa + pb)
            if np.linalg.norm(pb - pa) > field(mid[None, :])[0]:
                self.split_segment(i)
            else:
                i += 1
            if len(self.points) > MAX_TRIANGLES:
                raise MeshingError("sizing field is unreachably fine on the boundary")


def triangulate_domain(domain: DomainSpec, field: SizingField,
                       max_triangles: int = MAX_TRIANGLES) -> TriangleMesh:
    """Triangulate a domain so every inside triangle obeys the sizing field."""
    fr = _Frontier(domain)
    fr.split_to_size(field)

    for _ in range(MAX_PASSES):
        pts = np.array(fr.points)
        if len(pts) > max_triangles:
            raise MeshingError(
                f"point budget exceeded ({len(pts)}); sizing field likely unreachable")
        tri = Delaunay(pts)
        simplices = tri.simplices
        npts = len(pts)
        edge_set = np.unique(_edge_codes(_tri_edges(simplices), npts))

        if _segment_pass(fr, pts, edge_set, npts):
            continue

        inside = _inside_triangles(fr.domain, pts, simplices)
        tris = simplices[inside]
        if len(tris) == 0:
            raise MeshingError("no triangles inside the domain")
        if 3 * len(tris) > max_triangles:
            raise MeshingError(
                f"triangle budget exceeded ({len(tris)}); sizing field likely unreachable")

        if _size_split_pass(fr, pts, tris, field, npts):
            continue
        if _quality_pass(fr, pts, tris, field):
            continue
        return _finalize(fr, pts, tris, npts)

    raise MeshingError("refinement did not converge within the pass budget")


def _segment_pass(fr: _Frontier, pts: np.ndarray, edge_set: np.ndarray, npts: int) -> bool:
    segs = np.array([(a, b) for a, b, _ in fr.segments], dtype=np.int64)
    codes = _edge_codes(segs, npts)
    missing = ~np.isin(codes, edge_set)

    mids = 0.5 * (pts[segs[:, 0]] + pts[segs[:, 1]])
    radii = 0.5 * np.linalg.norm(pts[segs[:, 1]] - pts[segs[:, 0]], axis=1)
    tree = cKDTree(pts)
    encroached = np.zeros(len(segs), dtype=bool)
    hits = tree.query_ball_point(mids, radii * (1.0 - 1e-9))
    for k, hit in enumerate(hits):
        if missing[k]:
            continue
        for idx in hit:
            if idx != segs[k, 0] and idx != segs[k, 1]:
                encroached[k] = True
                break

    to_split = np.nonzero(missing | encroached)[0]
    for k in sorted(to_split, reverse=True):
        fr.split_segment(k)
    return len(to_split) > 0


def _inside_triangles(domain: DomainSpec, pts: np.ndarray, simplices: np.ndarray) -> np.ndarray:
    centroids = pts[simplices].mean(axis=1)
    return domain.contains(centroids)


def _size_split_pass(fr: _Frontier, pts: np.ndarray, tris: np.ndarray,
                     field: SizingField, npts: int) -> bool:
    """Split every too-long edge of inside triangles at its midpoint."""
    edges = _tri_edges(tris)
    codes = _edge_codes(edges, npts)
    _, first = np.unique(codes, return_index=True)
    edges = edges[first]
    mids = 0.5 * (pts[edges[:, 0]] + pts[edges[:, 1]])
    lengths = np.linalg.norm(pts[edges[:, 1]] - pts[edges[:, 0]], axis=1)
    too_long = lengths > field(mids)
    if not too_long.any():
        return False

    seg_lookup = {}
    for k, (a, b, _) in enumerate(fr.segments):
        seg_lookup[(min(a, b), max(a, b))] = k
    split_segments = []
    for e, m in zip(edges[too_long], mids[too_long]):
        key = (min(e[0], e[1]), max(e[0], e[1]))
        if key in seg_lookup:
            split_segments.append(seg_lookup[key])
        else:
            fr.add_point(m)
    for k in sorted(split_segments, reverse=True):
        fr.split_segment(k)
    return True


def _quality_pass(fr: _Frontier, pts: np.ndarray, tris: np.ndarray,
                  field: SizingField) -> bool:
    """Insert circumcenters of skinny triangles (Ruppert-style fallbacks)."""
    p0, p1, p2 = pts[tris[:, 0]], pts[tris[:, 1]], pts[tris[:, 2]]
    min_ang = _min_angles(p0, p1, p2)
    bad = min_ang < np.radians(MIN_ANGLE_DEG)
    if not bad.any():
        return False

    centroids = (p0 + p1 + p2) / 3.0
    local_h = field(centroids)
    shortest = np.minimum(np.minimum(np.linalg.norm(p1 - p0, axis=1),
                                     np.linalg.norm(p2 - p1, axis=1)),
                          np.linalg.norm(p0 - p2, axis=1))
    # Skip triangles pinched at sharp input corners and those already tiny:
    # the angle target is not achievable there.
    touches_sharp = np.isin(tris, sorted(fr.sharp)).any(axis=1) if fr.sharp else \
        np.zeros(len(tris), dtype=bool)
    bad &= ~touches_sharp
    bad &= shortest > 0.25 * local_h
    idxs = np.nonzero(bad)[0]
    if len(idxs) == 0:
        return False

    centers = _circumcenters(p0[idxs], p1[idxs], p2[idxs])
    segs = np.array([(a, b) for a, b, _ in fr.segments], dtype=np.int64)
    mids = 0.5 * (pts[segs[:, 0]] + pts[segs[:, 1]])
    radii = 0.5 * np.linalg.norm(pts[segs[:, 1]] - pts[segs[:, 0]], axis=1)
    seg_tree = cKDTree(mids)
    max_r = float(radii.max())
    seg_lookup = {(min(a, b), max(a, b)): k for k, (a, b, _) in enumerate(fr.segments)}

    accepted: list[np.ndarray] = []
    split_segs: set[int] = set()
    inserted = False
    for c, t_idx in zip(centers, idxs):
        near = seg_tree.query_ball_point(c, max_r)
        enc = [k for k in near if np.linalg.norm(c - mids[k]) < radii[k] * (1.0 - 1e-9)]
        if enc:
            split_segs.update(enc)
            inserted = True
            continue
        if not fr.domain.contains(c[None, :])[0]:
            # Circumcenter escaped the domain: bisect the triangle's longest
            # edge instead (always inside), via the segment list when the
            # edge lies on the boundary.
            tri = tris[t_idx]
            tp = pts[tri]
            lens = [np.linalg.norm(tp[(i + 1) % 3] - tp[i]) for i in range(3)]
            i = int(np.argmax(lens))
            key = (min(tri[i], tri[(i + 1) % 3]), max(tri[i], tri[(i + 1) % 3]))
            if key in seg_lookup:
                split_segs.add(seg_lookup[key])
                inserted = True
                continue
            c = 0.5 * (tp[i] + tp[(i + 1) % 3])
        h_here = field(c[None, :])[0]
        if any(np.linalg.norm(c - a) < 0.3 * h_here for a in accepted):
            continue
        accepted.append(c)
        fr.add_point(c)
        inserted = True
    for k in sorted(split_segs, reverse=True):
        fr.split_segment(k)
    return inserted


def _finalize(fr: _Frontier, pts: np.ndarray, tris: np.ndarray, npts: int) -> TriangleMesh:
    # Orient all triangles counter-clockwise.
    p0, p1, p2 = pts[tris[:, 0]], pts[tris[:, 1]], pts[tris[:, 2]]
    area2 = (p1[:, 0] - p0[:, 0]) * (p2[:, 1] - p0[:, 1]) \
        - (p1[:, 1] - p0[:, 1]) * (p2[:, 0] - p0[:, 0])
    flip = area2 < 0
    tris = tris.copy()
    tris[flip] = tris[flip][:, [0, 2, 1]]

    # The boundary of the inside set must coincide with the subsegments.
    codes, counts = np.unique(_edge_codes(_tri_edges(tris), npts), return_counts=True)
    boundary_codes = set(codes[counts == 1].tolist())
    segs = np.array([(a, b) for a, b, _ in fr.segments], dtype=np.int64)
    seg_codes = set(_edge_codes(segs, npts).tolist())
    if boundary_codes != seg_codes:
        raise MeshingError("triangulation boundary does not match the domain boundary")

    used = np.zeros(npts, dtype=bool)
    used[tris.ravel()] = True
    used[segs.ravel()] = True
    remap = -np.ones(npts, dtype=np.int64)
    remap[used] = np.arange(used.sum())
    seg_tags = np.array([t for _, _, t in fr.segments], dtype=np.int8)
    return TriangleMesh(
        points=pts[used],
        triangles=remap[tris].astype(np.int32),
        segments=remap[segs].astype(np.int32),
        segment_tags=seg_tags,
    )
