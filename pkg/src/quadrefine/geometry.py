"""Random planar domain generation with boundary condition assignment.

Domains live in the unit square. An outer polygon (counter-clockwise) may
carry up to two convex holes (clockwise). One outer edge is designated as
the fixed (Dirichlet) boundary and one non-adjacent outer edge as the
traction (Neumann) boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .rng import make_rng

RETRY_BUDGET = 100
HOLE_CLEARANCE = 0.02


class GenerationError(Exception):
    """Raised when randomized domain generation exhausts its retry budget."""


# ---------------------------------------------------------------------------
# Polygon primitives
# ---------------------------------------------------------------------------

def signed_area(vertices: np.ndarray) -> float:
    """Signed area of a closed polygon; positive for counter-clockwise."""
    x = vertices[:, 0]
    y = vertices[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def cross2(o, a, b) -> float:
    """Cross product (a-o) x (b-o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Convex hull of a point set, CCW order (Andrew's monotone chain).

    Collinear points interior to hull edges are dropped. Returns an array of
    hull vertices; fewer than 3 rows signals a degenerate (collinear) input.
    """
    pts = np.unique(np.asarray(points, dtype=float), axis=0)
    if len(pts) < 3:
        return pts
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def half(seq):
        out: list[np.ndarray] = []
        for p in seq:
            while len(out) >= 2 and cross2(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    return np.array(hull, dtype=float)


def points_in_polygon(points: np.ndarray, vertices: np.ndarray) -> np.ndarray:
    """Crossing-number inside test, vectorized over query points.

    Points exactly on the boundary may land on either side; callers that
    care about boundary points must test distances separately.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    x, y = pts[:, 0], pts[:, 1]
    inside = np.zeros(len(pts), dtype=bool)
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        straddles = (y1 > y) != (y2 > y)
        if not straddles.any():
            continue
        xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
        inside ^= straddles & (x < xi)
    return inside


def point_segment_distance(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from each query point to segment a-b."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.linalg.norm(pts - a, axis=1)
    t = np.clip((pts - a) @ ab / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return np.linalg.norm(pts - proj, axis=1)


def distance_to_boundary(points: np.ndarray, vertices: np.ndarray) -> np.ndarray:
    """Min distance from each point to the polygon's boundary polyline."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    best = np.full(len(pts), np.inf)
    n = len(vertices)
    for i in range(n):
        d = point_segment_distance(pts, vertices[i], vertices[(i + 1) % n])
        best = np.minimum(best, d)
    return best


def segments_properly_intersect(p1, p2, q1, q2) -> bool:
    """True if the open segments cross at a single interior point."""
    o1 = cross2(p1, p2, q1)
    o2 = cross2(p1, p2, q2)
    o3 = cross2(q1, q2, p1)
    o4 = cross2(q1, q2, p2)
    return o1 * o2 < 0 and o3 * o4 < 0


def segment_intersection_params(p1, p2, q1, q2):
    """Intersection parameters (t, u) of p1+t(p2-p1) = q1+u(q2-q1).

    Returns None for parallel segments or crossings outside the open
    parameter range (0, 1) on either segment.
    """
    r = p2 - p1
    s = q2 - q1
    denom = r[0] * s[1] - r[1] * s[0]
    if abs(denom) < 1e-15:
        return None
    qp = q1 - p1
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    eps = 1e-12
    if eps < t < 1 - eps and eps < u < 1 - eps:
        return t, u
    return None


@dataclass
class Polygon:
    """Simple polygon given by its ordered vertices, shape (n, 2)."""

    vertices: np.ndarray

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float)
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 2:
            raise ValueError("vertices must have shape (n, 2)")
        if len(self.vertices) < 3:
            raise ValueError("polygon needs at least 3 vertices")

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def signed_area(self) -> float:
        return signed_area(self.vertices)

    @property
    def is_ccw(self) -> bool:
        return self.signed_area > 0

    def reversed(self) -> "Polygon":
        return Polygon(self.vertices[::-1].copy())

    def edge(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        v = self.vertices
        return v[i], v[(i + 1) % len(v)]

    def edges(self):
        for i in range(len(self.vertices)):
            yield self.edge(i)

    def edge_cross_products(self) -> np.ndarray:
        """Cross product at each vertex for consecutive edge pairs."""
        v = self.vertices
        prev = np.roll(v, 1, axis=0)
        nxt = np.roll(v, -1, axis=0)
        return np.array([cross2(prev[i], v[i], nxt[i]) for i in range(len(v))])

    def is_convex(self) -> bool:
        c = self.edge_cross_products()
        return bool(np.all(c >= 0) or np.all(c <= 0))

    def reflex_vertices(self) -> np.ndarray:
        """Indices of reflex vertices (interior angle > pi) of a CCW polygon."""
        return np.nonzero(self.edge_cross_products() < 0)[0]

    def is_simple(self) -> bool:
        """No two non-adjacent edges intersect (O(n^2) scan)."""
        v = self.vertices
        n = len(v)
        for i in range(n):
            a1, a2 = v[i], v[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                if segments_properly_intersect(a1, a2, v[j], v[(j + 1) % n]):
                    return False
        return True

    def contains(self, points: np.ndarray) -> np.ndarray:
        return points_in_polygon(points, self.vertices)

    def centroid(self) -> np.ndarray:
        """Area centroid."""
        v = self.vertices
        nxt = np.roll(v, -1, axis=0)
        w = v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]
        area = 0.5 * np.sum(w)
        cx = np.sum((v[:, 0] + nxt[:, 0]) * w) / (6 * area)
        cy = np.sum((v[:, 1] + nxt[:, 1]) * w) / (6 * area)
        return np.array([cx, cy])

    def interior_angles(self) -> np.ndarray:
        """Interior angle at each vertex, in radians, for a CCW polygon."""
        v = self.vertices
        prev = np.roll(v, 1, axis=0)
        nxt = np.roll(v, -1, axis=0)
        a = prev - v
        b = nxt - v
        ang = np.arctan2(np.cross(b, a), np.einsum("ij,ij->i", b, a))
        return np.where(ang < 0, ang + 2 * np.pi, ang)


# ---------------------------------------------------------------------------
# Domain containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexityClass:
    """Geometric complexity triple (convexity, genus, smoothness)."""

    convexity: int
    genus: int
    smoothness: int = 0

    def __post_init__(self):
        if self.convexity not in (0, 1):
            raise ValueError(f"convexity must be 0 or 1, got {self.convexity}")
        if self.genus not in (0, 1, 2):
            raise ValueError(f"genus must be in {{0,1,2}}, got {self.genus}")
        if self.smoothness != 0:
            raise ValueError("only polygonal boundaries (smoothness 0) are supported")

    @classmethod
    def parse(cls, text: str) -> "ComplexityClass":
        parts = [int(p) for p in text.replace("(", "").replace(")", "").split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected class triple 'c,k,s', got {text!r}")
        return cls(*parts)

    def __str__(self) -> str:
        return f"{self.convexity},{self.genus},{self.smoothness}"


@dataclass
class DomainGeometry:
    """Outer polygon with holes, before boundary conditions are assigned."""

    outer: Polygon
    holes: list[Polygon] = field(default_factory=list)


@dataclass
class DomainSpec:
    """A computational domain plus its fixed and traction boundary edges.

    ``dirichlet_edge`` / ``neumann_edge`` index edges of the outer polygon;
    edge i runs from outer vertex i to vertex i+1 (mod n).
    """

    outer: Polygon
    holes: list[Polygon]
    dirichlet_edge: int
    neumann_edge: int
    seed: int = 0

    def validate(self) -> None:
        n = len(self.outer)
        if not self.outer.is_ccw:
            raise GenerationError("outer polygon must be counter-clockwise")
        if not self.outer.is_simple():
            raise GenerationError("outer polygon is self-intersecting")
        d, m = self.dirichlet_edge, self.neumann_edge
        if not (0 <= d < n and 0 <= m < n):
            raise GenerationError("boundary edge index out of range")
        if d == m or edges_adjacent(d, m, n):
            raise GenerationError("dirichlet and neumann edges must be non-adjacent")
        for h, hole in enumerate(self.holes):
            if hole.is_ccw:
                raise GenerationError(f"hole {h} must be clockwise")
            if not hole.is_simple():
                raise GenerationError(f"hole {h} is self-intersecting")
            if not hole_strictly_inside(hole, self.outer, HOLE_CLEARANCE):
                raise GenerationError(f"hole {h} not strictly inside the outer polygon")
        for a in range(len(self.holes)):
            for b in range(a + 1, len(self.holes)):
                if holes_too_close(self.holes[a], self.holes[b], HOLE_CLEARANCE):
                    raise GenerationError(f"holes {a} and {b} overlap or nearly touch")

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Inside the outer polygon and outside every hole."""
        inside = self.outer.contains(points)
        for hole in self.holes:
            inside &= ~hole.contains(points)
        return inside

    def boundary_loops(self):
        """(vertices, kind) for the outer loop and each hole loop."""
        yield self.outer.vertices, "outer"
        for hole in self.holes:
            yield hole.vertices, "hole"

    def genus(self) -> int:
        return len(self.holes)


def edges_adjacent(i: int, j: int, n: int) -> bool:
    """Whether outer edges i and j of an n-gon share a vertex."""
    return abs(i - j) in (1, n - 1)


def hole_strictly_inside(hole: Polygon, outer: Polygon, clearance: float) -> bool:
    if not outer.contains(hole.vertices).all():
        return False
    if distance_to_boundary(hole.vertices, outer.vertices).min() < clearance:
        return False
    # An edge crossing can occur even with all vertices inside.
    for a1, a2 in hole.edges():
        for b1, b2 in outer.edges():
            if segments_properly_intersect(a1, a2, b1, b2):
                return False
    return True


def holes_too_close(h1: Polygon, h2: Polygon, clearance: float) -> bool:
    if h1.contains(h2.vertices).any() or h2.contains(h1.vertices).any():
        return True
    for a1, a2 in h1.edges():
        for b1, b2 in h2.edges():
            if segments_properly_intersect(a1, a2, b1, b2):
                return True
    if distance_to_boundary(h1.vertices, h2.vertices).min() < clearance:
        return True
    return False


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def random_convex_polygon(n_points: int, rng: np.random.Generator) -> Polygon:
    """Convex hull of n_points uniform samples in the unit square, CCW."""
    if n_points < 3:
        raise ValueError("need at least 3 sample points")
    for _ in range(RETRY_BUDGET):
        pts = rng.uniform(0.0, 1.0, size=(n_points, 2))
        hull = convex_hull(pts)
        if len(hull) >= 3:
            return Polygon(hull)
    raise GenerationError("could not build a non-degenerate convex hull")


def _random_overlapping_rects(rng: np.random.Generator, min_overlap: float = 0.05):
    """Two axis-aligned rectangles in the unit square with overlap area >= min_overlap."""
    for _ in range(RETRY_BUDGET):
        w = rng.uniform(0.3, 0.7, size=2)
        h = rng.uniform(0.3, 0.7, size=2)
        x = np.array([rng.uniform(0.0, 1.0 - w[0]), rng.uniform(0.0, 1.0 - w[1])])
        y = np.array([rng.uniform(0.0, 1.0 - h[0]), rng.uniform(0.0, 1.0 - h[1])])
        ow = min(x[0] + w[0], x[1] + w[1]) - max(x[0], x[1])
        oh = min(y[0] + h[0], y[1] + h[1]) - max(y[0], y[1])
        if ow > 0 and oh > 0 and ow * oh >= min_overlap:
            return [(x[i], y[i], w[i], h[i]) for i in range(2)]
    raise GenerationError("could not place overlapping rectangles")


def convex_union(a: Polygon, b: Polygon) -> Polygon | None:
    """Outer boundary of the union of two convex CCW polygons.

    Returns None when the union would be disconnected (disjoint interiors)
    or when the boundary walk fails on a degenerate configuration; callers
    regenerate in that case. Containment collapses to the larger polygon.
    """
    if b.contains(a.vertices).all():
        return Polygon(b.vertices.copy())
    if a.contains(b.vertices).all():
        return Polygon(a.vertices.copy())

    va, vb = a.vertices, b.vertices
    na, nb = len(va), len(vb)
    # Intersections keyed by id, recorded on both polygons' edges.
    on_a: dict[int, list[tuple[float, int]]] = {i: [] for i in range(na)}
    on_b: dict[int, list[tuple[float, int]]] = {j: [] for j in range(nb)}
    xpts: list[np.ndarray] = []
    for i in range(na):
        p1, p2 = va[i], va[(i + 1) % na]
        for j in range(nb):
            q1, q2 = vb[j], vb[(j + 1) % nb]
            hit = segment_intersection_params(p1, p2, q1, q2)
            if hit is None:
                continue
            t, u = hit
            key = len(xpts)
            xpts.append(p1 + t * (p2 - p1))
            on_a[i].append((t, key))
            on_b[j].append((u, key))

    if not xpts:
        return None  # disjoint (containment already handled)
    if len(xpts) % 2 != 0:
        return None  # tangency; caller retries

    def build_cycle(verts, on_edge):
        nodes = []  # (point, key or -1)
        for i in range(len(verts)):
            nodes.append((verts[i], -1))
            for t, key in sorted(on_edge[i]):
                nodes.append((xpts[key], key))
        return nodes

    cyc_a = build_cycle(va, on_a)
    cyc_b = build_cycle(vb, on_b)
    pos_in = {}
    for which, cyc in (("a", cyc_a), ("b", cyc_b)):
        for idx, (_, key) in enumerate(cyc):
            if key >= 0:
                pos_in[(which, key)] = idx

    outside = ~b.contains(va)
    starts = np.nonzero(outside)[0]
    if len(starts) == 0:
        return None
    start_vertex = starts[0]
    start_idx = next(
        i for i, (pt, key) in enumerate(cyc_a) if key == -1 and np.allclose(pt, va[start_vertex])
    )

    result = []
    which, cyc, idx = "a", cyc_a, start_idx
    max_steps = 2 * (len(cyc_a) + len(cyc_b)) + 4
    for _ in range(max_steps):
        pt, key = cyc[idx]
        if result and which == "a" and idx == start_idx:
            break
        result.append(pt)
        if key >= 0:
            which = "b" if which == "a" else "a"
            cyc = cyc_b if which == "b" else cyc_a
            idx = pos_in[(which, key)]
        idx = (idx + 1) % len(cyc)
    else:
        return None  # walk did not close

    poly = _clean_loop(np.array(result))
    if poly is None or not poly.is_simple():
        return None
    area = poly.signed_area
    if area < max(abs(a.signed_area), abs(b.signed_area)) - 1e-9:
        return None
    return poly


def _clean_loop(pts: np.ndarray, tol: float = 1e-12) -> Polygon | None:
    """Drop repeated and collinear points, enforce CCW."""
    keep = [pts[0]]
    for p in pts[1:]:
        if np.linalg.norm(p - keep[-1]) > tol:
            keep.append(p)
    while len(keep) > 1 and np.linalg.norm(keep[0] - keep[-1]) <= tol:
        keep.pop()
    out = []
    n = len(keep)
    for i in range(n):
        prev, cur, nxt = keep[i - 1], keep[i], keep[(i + 1) % n]
        if abs(cross2(prev, cur, nxt)) > tol:
            out.append(cur)
    if len(out) < 3:
        return None
    arr = np.array(out)
    if signed_area(arr) < 0:
        arr = arr[::-1].copy()
    return Polygon(arr)


def random_nonconvex_polygon(rng: np.random.Generator, n_points: int = 30) -> Polygon:
    """Union of two convex hulls grown inside overlapping rectangles.

    Unions that come out disconnected or still convex are discarded and
    regenerated, as are degenerate boundary walks.
    """
    for _ in range(RETRY_BUDGET):
        try:
            rects = _random_overlapping_rects(rng)
        except GenerationError:
            continue
        hulls = []
        for (x, y, w, h) in rects:
            pts = rng.uniform(0.0, 1.0, size=(n_points, 2)) * [w, h] + [x, y]
            hull = convex_hull(pts)
            if len(hull) >= 3:
                hulls.append(Polygon(hull))
        if len(hulls) != 2:
            continue
        merged = convex_union(hulls[0], hulls[1])
        if merged is None or merged.is_convex() or not merged.is_simple():
            continue
        return merged
    raise GenerationError("could not generate a non-convex domain")


def _perimeter_point(square_param: float) -> np.ndarray:
    """Point on the unit-square boundary at normalized arclength in [0, 4)."""
    s = square_param % 4.0
    if s < 1.0:
        return np.array([s, 0.0])
    if s < 2.0:
        return np.array([1.0, s - 1.0])
    if s < 3.0:
        return np.array([3.0 - s, 1.0])
    return np.array([0.0, 4.0 - s])


def _angle_in_sector(theta: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Membership of angles in the CCW interval [lo, hi), all in [0, 2pi)."""
    if hi <= lo:
        hi += 2 * np.pi
    t = np.where(theta < lo, theta + 2 * np.pi, theta)
    return (t >= lo) & (t < hi)


def carve_voids(base: Polygon, k: int, rng: np.random.Generator) -> DomainGeometry:
    """Cut k small convex holes out of ``base``, one per angular sector.

    Sectors are bounded by rays from random unit-square boundary points
    through the polygon centroid. Each hole is the convex hull of 10 samples
    drawn near a random anchor deep inside its sector.
    """
    if k == 0:
        return DomainGeometry(outer=Polygon(base.vertices.copy()), holes=[])
    if not 1 <= k <= 2:
        raise ValueError("hole count must be 0, 1 or 2")

    center = base.centroid()
    div_pts = [_perimeter_point(rng.uniform(0.0, 4.0)) for _ in range(k)]
    angles = sorted(math.atan2(*(p - center)[::-1]) % (2 * np.pi) for p in div_pts)
    if k == 1:
        sectors = [(0.0, 2 * np.pi)]
    else:
        sectors = [(angles[i], angles[(i + 1) % k]) for i in range(k)]

    holes: list[Polygon] = []
    for lo, hi in sectors:
        hole = _carve_one_hole(base, center, lo, hi, holes, rng)
        holes.append(hole)
    return DomainGeometry(outer=Polygon(base.vertices.copy()), holes=holes)


def _carve_one_hole(base, center, lo, hi, existing, rng) -> Polygon:
    bbox_min = base.vertices.min(axis=0)
    bbox_max = base.vertices.max(axis=0)
    for _ in range(RETRY_BUDGET):
        anchor = rng.uniform(bbox_min, bbox_max)
        theta = np.arctan2(anchor[1] - center[1], anchor[0] - center[0]) % (2 * np.pi)
        if not _angle_in_sector(np.array([theta]), lo, hi)[0]:
            continue
        if not base.contains(anchor[None, :])[0]:
            continue
        margin = distance_to_boundary(anchor[None, :], base.vertices)[0]
        if margin < 0.07:
            continue
        radius = min(rng.uniform(0.03, 0.10), margin - HOLE_CLEARANCE - 0.01)
        samples = []
        for _ in range(200):
            if len(samples) == 10:
                break
            r = radius * np.sqrt(rng.uniform())
            ang = rng.uniform(0.0, 2 * np.pi)
            p = anchor + r * np.array([np.cos(ang), np.sin(ang)])
            pth = np.arctan2(p[1] - center[1], p[0] - center[0]) % (2 * np.pi)
            if _angle_in_sector(np.array([pth]), lo, hi)[0] and base.contains(p[None, :])[0]:
                samples.append(p)
        if len(samples) < 10:
            continue
        hull = convex_hull(np.array(samples))
        if len(hull) < 3:
            continue
        hole = Polygon(hull).reversed()  # holes are stored clockwise
        if not hole_strictly_inside(hole, base, HOLE_CLEARANCE):
            continue
        if any(holes_too_close(hole, other, HOLE_CLEARANCE) for other in existing):
            continue
        return hole
    raise GenerationError("could not place a hole inside its sector")


def assign_boundary_edges(geom: DomainGeometry, rng: np.random.Generator,
                          seed: int = 0) -> DomainSpec:
    """Pick two non-adjacent outer edges uniformly: first fixed, second loaded."""
    n = len(geom.outer)
    if n < 4:
        raise GenerationError("outer polygon needs at least 4 edges for non-adjacent pair")
    pairs = [(i, j) for i in range(n) for j in range(n)
             if i != j and not edges_adjacent(i, j, n)]
    d, m = pairs[int(rng.integers(len(pairs)))]
    spec = DomainSpec(outer=geom.outer, holes=geom.holes,
                      dirichlet_edge=d, neumann_edge=m, seed=seed)
    spec.validate()
    return spec


def generate_domain(cls: ComplexityClass, seed: int, hull_points: int = 30) -> DomainSpec:
    """Generate one random domain of the given complexity class, deterministically."""
    rng = make_rng(seed)
    for _ in range(RETRY_BUDGET):
        try:
            if cls.convexity == 0:
                base = random_convex_polygon(hull_points, rng)
            else:
                base = random_nonconvex_polygon(rng, hull_points)
            if len(base) < 4:
                continue
            geom = carve_voids(base, cls.genus, rng)
            return assign_boundary_edges(geom, rng, seed=seed)
        except GenerationError:
            continue
    raise GenerationError(f"domain generation failed for class {cls} (seed {seed})")


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def save_domain(spec: DomainSpec, path) -> None:
    lines = [f"outer {len(spec.outer)}"]
    lines += [f"{x:.17g} {y:.17g}" for x, y in spec.outer.vertices]
    for hole in spec.holes:
        lines.append(f"hole {len(hole)}")
        lines += [f"{x:.17g} {y:.17g}" for x, y in hole.vertices]
    lines.append(f"dirichlet {spec.dirichlet_edge}")
    lines.append(f"neumann {spec.neumann_edge}")
    lines.append(f"seed {spec.seed}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def load_domain(path) -> DomainSpec:
    with open(path) as f:
        tokens = f.read().split()
    pos = 0

    def take() -> str:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def read_loop(count: int) -> np.ndarray:
        return np.array([[float(take()), float(take())] for _ in range(count)])

    if take() != "outer":
        raise ValueError("domain file must start with 'outer'")
    outer = Polygon(read_loop(int(take())))
    holes = []
    dirichlet = neumann = None
    seed = 0
    while pos < len(tokens):
        word = take()
        if word == "hole":
            holes.append(Polygon(read_loop(int(take()))))
        elif word == "dirichlet":
            dirichlet = int(take())
        elif word == "neumann":
            neumann = int(take())
        elif word == "seed":
            seed = int(take())
        else:
            raise ValueError(f"unexpected token {word!r} in domain file")
    if dirichlet is None or neumann is None:
        raise ValueError("domain file missing boundary edge designation")
    spec = DomainSpec(outer=outer, holes=holes, dirichlet_edge=dirichlet,
                      neumann_edge=neumann, seed=seed)
    spec.validate()
    return spec
