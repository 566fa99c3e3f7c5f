"""Discrete forward projector and its exact adjoint.

Rays are traced with fixed-step sampling (half a pixel per step) and
bilinear interpolation.  The adjoint scatters with the same sample
positions and weights, so <A x, y> == <x, A^T y> up to float rounding.
"""

from __future__ import annotations

import numpy as np

from .geometry import FAN, PARALLEL, Image2D, Sinogram, SinogramGeometry


def view_rays(geom: SinogramGeometry, view: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-detector ray origins and unit directions for one view.

    Parallel beams place each origin on the detector axis through the
    rotation center; fan beams share the source point as origin, with
    directions through the flat detector elements.
    Returns ``(origins, directions)`` with shape (num_detectors, 2).
    """
    theta = geom.view_angles()[view]
    dets = geom.detector_positions()
    w = geom.num_detectors
    if geom.beam == PARALLEL:
        normal = np.array([np.cos(theta), np.sin(theta)])
        direction = np.array([-np.sin(theta), np.cos(theta)])
        origins = dets[:, None] * normal[None, :]
        directions = np.broadcast_to(direction, (w, 2)).copy()
    else:
        r = geom.fan.source_to_axis
        d = geom.fan.source_to_detector
        source = r * np.array([np.sin(theta), -np.cos(theta)])
        central = np.array([-np.sin(theta), np.cos(theta)])
        lateral = np.array([np.cos(theta), np.sin(theta)])
        targets = source[None, :] + d * central[None, :] + dets[:, None] * lateral[None, :]
        directions = targets - source[None, :]
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        origins = np.broadcast_to(source, (w, 2)).copy()
    return origins, directions


def _sample_positions(img: Image2D, origins, directions, step):
    """Sample points along each ray covering the image bounding circle."""
    half = img.half_diagonal + step
    # Midpoint of the in-circle chord: closest approach to the center.
    s_mid = -np.einsum("ij,ij->i", origins, directions)
    n_steps = int(np.ceil(2.0 * half / step)) + 1
    s = np.linspace(-half, half, n_steps)
    pts = origins[:, None, :] + (s_mid[:, None] + s[None, :])[:, :, None] * directions[:, None, :]
    return pts


def _bilinear_terms(img: Image2D, pts):
    """Indices and weights of the 4-point bilinear stencil at ``pts``.

    Points outside the grid get zero weight.  Returns flat corner indices
    (4, n) into the image and matching weights (4, n).
    """
    h, w = img.values.shape
    fx = pts[..., 0] / img.pixel_size + (w - 1) / 2.0
    fy = (h - 1) / 2.0 - pts[..., 1] / img.pixel_size
    x0 = np.floor(fx)
    y0 = np.floor(fy)
    tx = fx - x0
    ty = fy - y0
    x0 = x0.astype(np.int64)
    y0 = y0.astype(np.int64)

    idx = np.empty((4,) + fx.shape, dtype=np.int64)
    wgt = np.empty((4,) + fx.shape, dtype=np.float64)
    for k, (dy, dx) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
        yy = y0 + dy
        xx = x0 + dx
        inside = (yy >= 0) & (yy < h) & (xx >= 0) & (xx < w)
        wy = np.where(dy == 0, 1.0 - ty, ty)
        wx = np.where(dx == 0, 1.0 - tx, tx)
        wgt[k] = np.where(inside, wy * wx, 0.0)
        idx[k] = np.where(inside, yy * w + xx, 0)
    return idx.reshape(4, -1), wgt.reshape(4, -1)


def integrate_rays(img: Image2D, origins, directions, step: float | None = None) -> np.ndarray:
    """Line integrals of the image along the given rays."""
    if step is None:
        step = img.pixel_size / 2.0
    pts = _sample_positions(img, origins, directions, step)
    idx, wgt = _bilinear_terms(img, pts)
    flat = img.values.ravel()
    vals = (wgt * flat[idx]).sum(axis=0).reshape(pts.shape[:2])
    return vals.sum(axis=1) * step


def forward_project(img: Image2D, geom: SinogramGeometry) -> Sinogram:
    """Project an image into sinogram space, one ray per (view, detector)."""
    step = img.pixel_size / 2.0
    out = np.empty((geom.num_views, geom.num_detectors), dtype=np.float64)
    for view in range(geom.num_views):
        origins, directions = view_rays(geom, view)
        out[view] = integrate_rays(img, origins, directions, step)
    return Sinogram(geometry=geom, values=out)


def backproject_adjoint(sino: Sinogram, image_shape: tuple[int, int] | None = None,
                        pixel_size: float = 1.0) -> Image2D:
    """Exact adjoint of :func:`forward_project` for the same discretization.

    The image support defaults to a square grid matching the detector
    count; pass ``image_shape`` to target the original image size.
    """
    geom = sino.geometry
    if image_shape is None:
        n = geom.num_detectors
        image_shape = (n, n)
    ref = Image2D(values=np.zeros(image_shape), pixel_size=pixel_size)
    step = pixel_size / 2.0
    acc = np.zeros(ref.values.size, dtype=np.float64)
    for view in range(geom.num_views):
        origins, directions = view_rays(geom, view)
        pts = _sample_positions(ref, origins, directions, step)
        idx, wgt = _bilinear_terms(ref, pts)
        n_samples = pts.shape[1]
        ray_vals = np.repeat(sino.values[view], n_samples)
        contrib = (wgt * ray_vals[None, :]).ravel()
        acc += np.bincount(idx.ravel(), weights=contrib, minlength=acc.size)
    return Image2D(values=(acc * step).reshape(image_shape), pixel_size=pixel_size)
