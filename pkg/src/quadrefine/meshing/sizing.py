"""Target edge-length fields over the unit square.

A field maps points to desired local edge lengths. Backing stores are a
constant, a raster grid sampled from an image, or per-element values of an
existing mesh rasterized onto a background grid. Grid-backed fields are
gradient-limited so that requested sizes never jump faster than
``GRADING_SLOPE`` per unit distance, which keeps remeshed element-size
ratios near 2 between neighbors.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

H_MIN = 0.004
H_MAX = 0.25
GRADING_SLOPE = 0.5


def _gradient_limit(values: np.ndarray, spacing: float,
                    slope: float = GRADING_SLOPE) -> np.ndarray:
    """Lower grid values until |h(a)-h(b)| <= slope*dist for all neighbors."""
    h = values.copy()
    straight = slope * spacing
    diag = slope * spacing * np.sqrt(2.0)
    for _ in range(2 * max(h.shape)):
        before = h.copy()
        h[1:, :] = np.minimum(h[1:, :], h[:-1, :] + straight)
        h[:-1, :] = np.minimum(h[:-1, :], h[1:, :] + straight)
        h[:, 1:] = np.minimum(h[:, 1:], h[:, :-1] + straight)
        h[:, :-1] = np.minimum(h[:, :-1], h[:, 1:] + straight)
        h[1:, 1:] = np.minimum(h[1:, 1:], h[:-1, :-1] + diag)
        h[:-1, :-1] = np.minimum(h[:-1, :-1], h[1:, 1:] + diag)
        h[1:, :-1] = np.minimum(h[1:, :-1], h[:-1, 1:] + diag)
        h[:-1, 1:] = np.minimum(h[:-1, 1:], h[1:, :-1] + diag)
        if np.array_equal(before, h):
            break
    return h


class SizingField:
    """Evaluates a target edge length h(p) > 0, clamped to [h_min, h_max]."""

    def __init__(self, constant: float | None = None, grid: np.ndarray | None = None,
                 origin: float = 0.0, spacing: float = 1.0,
                 h_min: float = H_MIN, h_max: float = H_MAX):
        if not 0.0 < h_min <= h_max:
            raise ValueError("need 0 < h_min <= h_max")
        self.h_min = h_min
        self.h_max = h_max
        self.constant = None if constant is None else float(np.clip(constant, h_min, h_max))
        self.grid = None
        self.origin = origin
        self.spacing = spacing
        if grid is not None:
            self.grid = np.clip(np.asarray(grid, dtype=float), h_min, h_max)
        if (self.constant is None) == (self.grid is None):
            raise ValueError("exactly one of constant or grid must be given")

    @classmethod
    def from_constant(cls, h: float, h_min: float = H_MIN, h_max: float = H_MAX) -> "SizingField":
        return cls(constant=h, h_min=h_min, h_max=h_max)

    @classmethod
    def from_image(cls, image, h_min: float, h_max: float) -> "SizingField":
        """Interpret a density image as sizes h = h_min + I*(h_max - h_min).

        Grid nodes sit at pixel centers; image row 0 is the top of the unit
        square. A constant image degenerates to a constant field so meshes
        built from it match uniform meshing exactly.
        """
        data = np.asarray(image.data, dtype=float)
        values = h_min + data * (h_max - h_min)
        if np.all(values == values.flat[0]):
            return cls(constant=float(values.flat[0]), h_min=h_min, h_max=h_max)
        res = data.shape[0]
        spacing = 1.0 / res
        grid = values[::-1, :]  # flip rows so grid index 0 is y = lowest
        grid = _gradient_limit(grid, spacing)
        return cls(grid=grid, origin=0.5 / res, spacing=spacing, h_min=h_min, h_max=h_max)

    @classmethod
    def from_element_values(cls, centroids: np.ndarray, values: np.ndarray,
                            h_min: float, h_max: float, grid_res: int = 96) -> "SizingField":
        """Rasterize per-element sizes onto a background grid (nearest element)."""
        centroids = np.asarray(centroids, dtype=float)
        values = np.asarray(values, dtype=float)
        spacing = 1.0 / (grid_res - 1)
        xs = np.linspace(0.0, 1.0, grid_res)
        gx, gy = np.meshgrid(xs, xs)          # gy varies along axis 0
        nodes = np.column_stack([gx.ravel(), gy.ravel()])
        _, nearest = cKDTree(centroids).query(nodes)
        grid = values[nearest].reshape(grid_res, grid_res)
        grid = _gradient_limit(grid, spacing)
        return cls(grid=grid, origin=0.0, spacing=spacing, h_min=h_min, h_max=h_max)

    def scaled(self, factor: float) -> "SizingField":
        """Globally scaled copy (values re-clamped to the field's bounds)."""
        if self.constant is not None:
            return SizingField(constant=self.constant * factor,
                               h_min=self.h_min, h_max=self.h_max)
        return SizingField(grid=self.grid * factor, origin=self.origin,
                           spacing=self.spacing, h_min=self.h_min, h_max=self.h_max)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.constant is not None:
            return np.full(len(pts), self.constant)
        n = self.grid.shape[0]
        fx = np.clip((pts[:, 0] - self.origin) / self.spacing, 0.0, n - 1 - 1e-9)
        fy = np.clip((pts[:, 1] - self.origin) / self.spacing, 0.0, n - 1 - 1e-9)
        ix = fx.astype(int)
        iy = fy.astype(int)
        tx = fx - ix
        ty = fy - iy
        g = self.grid
        vals = ((1 - tx) * (1 - ty) * g[iy, ix] + tx * (1 - ty) * g[iy, ix + 1]
                + (1 - tx) * ty * g[iy + 1, ix] + tx * ty * g[iy + 1, ix + 1])
        return np.clip(vals, self.h_min, self.h_max)
