"""Shepp-Logan head phantom rasterization."""

from __future__ import annotations

import numpy as np

from .geometry import Image2D

# Ellipse geometry shared by both contrast variants:
# (semi_a, semi_b, x0, y0, rotation_deg)
_ELLIPSES = np.array(
    [
        [0.6900, 0.9200, 0.00, 0.0000, 0.0],
        [0.6624, 0.8740, 0.00, -0.0184, 0.0],
        [0.1100, 0.3100, 0.22, 0.0000, -18.0],
        [0.1600, 0.4100, -0.22, 0.0000, 18.0],
        [0.2100, 0.2500, 0.00, 0.3500, 0.0],
        [0.0460, 0.0460, 0.00, 0.1000, 0.0],
        [0.0460, 0.0460, 0.00, -0.1000, 0.0],
        [0.0460, 0.0230, -0.08, -0.6050, 0.0],
        [0.0230, 0.0230, 0.00, -0.6060, 0.0],
        [0.0230, 0.0460, 0.06, -0.6050, 0.0],
    ]
)

_INTENSITY = {
    "standard": np.array([1.0, -0.98, -0.02, -0.02, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01]),
    "modified": np.array([1.0, -0.8, -0.2, -0.2, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1]),
}


def shepp_logan_ellipses(contrast: str = "modified") -> np.ndarray:
    """Ellipse table as rows of (intensity, a, b, x0, y0, rot_deg)."""
    if contrast not in _INTENSITY:
        raise ValueError(f"unknown contrast {contrast!r}; use 'standard' or 'modified'")
    return np.column_stack([_INTENSITY[contrast], _ELLIPSES])


def pixel_grid(size: int) -> tuple[np.ndarray, np.ndarray]:
    """Pixel-center coordinates in [-1, 1]^2 (x right, y up, row 0 on top)."""
    ax = (2.0 * np.arange(size) + 1.0 - size) / size
    x = np.broadcast_to(ax[None, :], (size, size))
    y = np.broadcast_to(-ax[:, None], (size, size))
    return x, y


def make_shepp_logan(size: int, contrast: str = "modified") -> Image2D:
    """Rasterize the 10-ellipse head phantom on a size x size grid.

    Overlapping ellipse intensities sum; the result is clamped to [0, 1]
    so negative overlaps never produce negative attenuation.
    """
    if size < 16:
        raise ValueError(f"phantom size must be >= 16, got {size}")
    table = shepp_logan_ellipses(contrast)
    x, y = pixel_grid(size)
    values = np.zeros((size, size), dtype=np.float64)
    for amp, a, b, x0, y0, rot in table:
        phi = np.deg2rad(rot)
        dx = x - x0
        dy = y - y0
        xr = dx * np.cos(phi) + dy * np.sin(phi)
        yr = -dx * np.sin(phi) + dy * np.cos(phi)
        values += amp * ((xr / a) ** 2 + (yr / b) ** 2 <= 1.0)
    np.clip(values, 0.0, 1.0, out=values)
    return Image2D(values=values, pixel_size=1.0)
