"""Fixed-resolution grayscale images of domains, boundary masks and densities.

Pixel (i, j) of a res x res image covers the square
[j/res, (j+1)/res] x [1-(i+1)/res, 1-i/res]; row 0 sits at the top (y near 1)
so PNG exports look upright.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np
from PIL import Image

from .geometry import DomainSpec, point_segment_distance

GIMG_MAGIC = b"GIMG"
DEFAULT_RESOLUTION = 60


@dataclass
class GrayImage:
    """Square scalar image with values in [0, 1], float32 row-major."""

    data: np.ndarray

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.float32)
        if self.data.ndim != 2 or self.data.shape[0] != self.data.shape[1]:
            raise ValueError("image must be square with shape (res, res)")
        if np.any(self.data < -1e-6) or np.any(self.data > 1 + 1e-6):
            raise ValueError("image values must lie in [0, 1]")
        np.clip(self.data, 0.0, 1.0, out=self.data)

    @property
    def resolution(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @classmethod
    def full(cls, res: int, value: float) -> "GrayImage":
        return cls(np.full((res, res), value, dtype=np.float32))

    def save_gimg(self, path) -> None:
        """Lossless raw format: magic, u32 width/height, f32 LE pixels."""
        with open(path, "wb") as f:
            f.write(GIMG_MAGIC)
            f.write(struct.pack("<II", self.width, self.height))
            f.write(self.data.astype("<f4").tobytes())

    @classmethod
    def load_gimg(cls, path) -> "GrayImage":
        with open(path, "rb") as f:
            magic = f.read(4)
            if magic != GIMG_MAGIC:
                raise ValueError(f"not a GIMG file: {path}")
            w, h = struct.unpack("<II", f.read(8))
            data = np.frombuffer(f.read(4 * w * h), dtype="<f4").reshape(h, w)
        return cls(data.copy())

    def save_png(self, path) -> None:
        """8-bit preview; quantized, not suitable as a training target."""
        img = Image.fromarray(np.round(self.data * 255).astype(np.uint8), mode="L")
        img.save(path)

    @classmethod
    def load_png(cls, path) -> "GrayImage":
        img = Image.open(path).convert("L")
        return cls(np.asarray(img, dtype=np.float32) / 255.0)

    @classmethod
    def load(cls, path) -> "GrayImage":
        text = str(path)
        if text.endswith(".gimg"):
            return cls.load_gimg(path)
        return cls.load_png(path)


@dataclass
class InputStack:
    """The three network input channels: geometry plus the two BC masks."""

    geometry: GrayImage
    dirichlet: GrayImage
    neumann: GrayImage

    def as_array(self) -> np.ndarray:
        """Channel-stacked (3, res, res) float32 array."""
        return np.stack([self.geometry.data, self.dirichlet.data, self.neumann.data])


def pixel_centers(res: int) -> np.ndarray:
    """(res, res, 2) array of pixel center coordinates in [0,1]^2."""
    j = (np.arange(res) + 0.5) / res
    i = 1.0 - (np.arange(res) + 0.5) / res
    xx, yy = np.meshgrid(j, i)
    return np.stack([xx, yy], axis=-1)


def rasterize_domain(domain: DomainSpec, res: int = DEFAULT_RESOLUTION) -> GrayImage:
    """Binary mask: 1 where the pixel center lies inside the domain."""
    centers = pixel_centers(res).reshape(-1, 2)
    inside = domain.contains(centers).reshape(res, res)
    return GrayImage(inside.astype(np.float32))


def pixels_touching_domain(domain: DomainSpec, res: int = DEFAULT_RESOLUTION) -> np.ndarray:
    """Pixels at least partially covered by the domain (center or any corner inside)."""
    touch = np.zeros((res, res), dtype=bool)
    centers = pixel_centers(res).reshape(-1, 2)
    touch |= domain.contains(centers).reshape(res, res)
    half = 0.5 / res
    for dx in (-half, half):
        for dy in (-half, half):
            pts = centers + [dx, dy]
            touch |= domain.contains(pts).reshape(res, res)
    return touch


def rasterize_edge(domain: DomainSpec, edge_kind: str,
                   res: int = DEFAULT_RESOLUTION) -> GrayImage:
    """One-pixel-wide mask of the designated boundary edge.

    A pixel is set when its center lies within half a pixel diagonal of the
    edge segment.
    """
    if edge_kind == "dirichlet":
        a, b = domain.outer.edge(domain.dirichlet_edge)
    elif edge_kind == "neumann":
        a, b = domain.outer.edge(domain.neumann_edge)
    else:
        raise ValueError(f"edge_kind must be 'dirichlet' or 'neumann', got {edge_kind!r}")
    if np.linalg.norm(b - a) == 0.0:
        return GrayImage.full(res, 0.0)
    centers = pixel_centers(res).reshape(-1, 2)
    dist = point_segment_distance(centers, a, b).reshape(res, res)
    mask = dist <= np.sqrt(2.0) / (2.0 * res)
    return GrayImage(mask.astype(np.float32))


def build_input_stack(domain: DomainSpec, res: int = DEFAULT_RESOLUTION) -> InputStack:
    return InputStack(
        geometry=rasterize_domain(domain, res),
        dirichlet=rasterize_edge(domain, "dirichlet", res),
        neumann=rasterize_edge(domain, "neumann", res),
    )


def preprocess_prediction(pred: GrayImage, geometry: GrayImage) -> GrayImage:
    """Overwrite everything outside the domain mask with 1."""
    if pred.data.shape != geometry.data.shape:
        raise ValueError("prediction and geometry mask resolutions differ")
    out = np.where(geometry.data >= 0.5, pred.data, np.float32(1.0))
    return GrayImage(out)


def postprocess_scale(pred: GrayImage, threshold: float = 0.02,
                      factor: float = 0.25) -> GrayImage:
    """Piecewise-linear sharpening of small density values.

    Values below ``threshold`` shrink by ``factor``; above it the map runs
    linearly from (threshold, threshold*factor) to (1, 1), so the result is
    continuous, monotone and fixes the endpoint 1.
    """
    v = pred.data.astype(np.float64)
    knee = threshold * factor
    hi = knee + (v - threshold) * (1.0 - knee) / (1.0 - threshold)
    out = np.where(v < threshold, v * factor, hi)
    return GrayImage(np.clip(out, 0.0, 1.0).astype(np.float32))


def density_rel_error(ground: GrayImage, pred: GrayImage, geometry: GrayImage) -> float:
    """Relative pixelwise L2 distance between density images over the domain.

    The prediction is first masked to 1 outside the domain, so values there
    never contribute.
    """
    if ground.data.shape != pred.data.shape:
        raise ValueError("image resolutions differ")
    masked = preprocess_prediction(pred, geometry)
    denom = float(np.linalg.norm(ground.data.astype(np.float64)))
    assert denom > 0.0, "ground-truth density norm cannot vanish (outside pixels are 1)"
    num = float(np.linalg.norm(ground.data.astype(np.float64) - masked.data.astype(np.float64)))
    return num / denom
