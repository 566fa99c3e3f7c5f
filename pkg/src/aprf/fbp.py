"""Filtered back-projection with FFT ramp filtering.

Fan-beam sinograms are first rebinned onto a parallel grid (bilinear
resampling in angle/detector space), then reconstructed by the parallel
path; weighted fan FBP is deliberately out of scope.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import FAN, PARALLEL, FanParams, Image2D, Sinogram, SinogramGeometry

RAMLAK = "RamLak"
HANN = "Hann"


def ramp_kernel(n: int, spacing: float, window: str) -> np.ndarray:
    """Frequency response |f| (optionally Hann-windowed) on the rfft grid."""
    freqs = np.abs(np.fft.rfftfreq(n, d=spacing))
    if window == RAMLAK:
        return freqs
    if window == HANN:
        nyquist = 0.5 / spacing
        return freqs * 0.5 * (1.0 + np.cos(np.pi * freqs / nyquist))
    raise ValueError(f"unknown filter {window!r}; use 'RamLak' or 'Hann'")


def filter_views(values: np.ndarray, spacing: float, window: str = RAMLAK) -> np.ndarray:
    """Ramp-filter each sinogram row, zero-padded to a power of two >= 2W."""
    num_views, w = values.shape
    padded = 1 << int(math.ceil(math.log2(2 * w)))
    buf = np.zeros((num_views, padded), dtype=np.float64)
    buf[:, :w] = values
    spectrum = np.fft.rfft(buf, axis=1)
    spectrum *= ramp_kernel(padded, spacing, window)[None, :]
    return np.fft.irfft(spectrum, n=padded, axis=1)[:, :w]


def fbp_reconstruct(
    sino: Sinogram,
    filter: str = RAMLAK,
    output_size: int | None = None,
    pixel_size: float = 1.0,
) -> Image2D:
    """Reconstruct an image by ramp filtering and interpolated smearing.

    Each filtered view is spread back across the image along its rays
    (linear interpolation on the detector axis) and the sum is scaled by
    the angular step.  Fan input is rebinned to parallel first.
    """
    if sino.geometry.num_views < 2:
        raise ValueError("FBP needs at least 2 views")
    if sino.geometry.beam == FAN:
        sino = rebin_fan_to_parallel(sino)
    geom = sino.geometry
    if output_size is None:
        output_size = geom.num_detectors

    filtered = filter_views(sino.values, geom.detector_spacing, filter)
    angles = geom.view_angles()
    dets = geom.detector_positions()

    ax = (np.arange(output_size) - (output_size - 1) / 2.0) * pixel_size
    x = ax[None, :]
    y = -ax[:, None]
    recon = np.zeros((output_size, output_size), dtype=np.float64)
    for view, theta in enumerate(angles):
        t = x * np.cos(theta) + y * np.sin(theta)
        recon += np.interp(t.ravel(), dets, filtered[view], left=0.0, right=0.0).reshape(
            output_size, output_size
        )
    lo, hi = geom.angular_range
    recon *= (hi - lo) / geom.num_views
    return Image2D(values=recon, pixel_size=pixel_size)


def rebin_fan_to_parallel(
    sino: Sinogram,
    num_views: int | None = None,
    num_detectors: int | None = None,
) -> Sinogram:
    """Resample a full-circle fan sinogram onto a parallel (theta, t) grid.

    A fan ray from source angle beta through detector offset u coincides
    with the parallel ray (theta, t) where gamma = atan(u / D),
    theta = beta - gamma and t = R sin(gamma).  Inverting per target cell
    gives bilinear sample positions in the fan grid; the angle axis wraps
    periodically.
    """
    geom = sino.geometry
    if geom.beam != FAN:
        raise ValueError("rebinning expects a fan-beam sinogram")
    r = geom.fan.source_to_axis
    d = geom.fan.source_to_detector
    if num_views is None:
        num_views = geom.num_views
    if num_detectors is None:
        num_detectors = geom.num_detectors

    u = geom.detector_positions()
    gamma_max = math.atan(np.max(np.abs(u)) / d)
    t_max = r * math.sin(gamma_max)
    t_spacing = 2.0 * t_max / num_detectors
    target = SinogramGeometry(
        beam=PARALLEL,
        num_views=num_views,
        num_detectors=num_detectors,
        angular_range=(0.0, math.pi),
        detector_spacing=t_spacing,
    )
    thetas = target.view_angles()
    ts = target.detector_positions()

    gamma = np.arcsin(np.clip(ts / r, -1.0, 1.0))
    u_tgt = d * np.tan(gamma)
    beta = thetas[:, None] + gamma[None, :]

    lo, hi = geom.angular_range
    beta_idx = (beta - lo) / (hi - lo) * geom.num_views
    beta_idx = np.mod(beta_idx, geom.num_views)
    u_idx = (u_tgt - u[0]) / geom.detector_spacing
    u_idx = np.broadcast_to(u_idx[None, :], beta_idx.shape)

    b0 = np.floor(beta_idx).astype(np.int64)
    tb = beta_idx - b0
    b1 = (b0 + 1) % geom.num_views
    u0 = np.floor(u_idx).astype(np.int64)
    tu = u_idx - u0
    u1 = u0 + 1
    valid0 = (u0 >= 0) & (u0 < geom.num_detectors)
    valid1 = (u1 >= 0) & (u1 < geom.num_detectors)
    u0c = np.clip(u0, 0, geom.num_detectors - 1)
    u1c = np.clip(u1, 0, geom.num_detectors - 1)

    fan_vals = sino.values
    out = (1.0 - tb) * (1.0 - tu) * np.where(valid0, fan_vals[b0, u0c], 0.0)
    out += (1.0 - tb) * tu * np.where(valid1, fan_vals[b0, u1c], 0.0)
    out += tb * (1.0 - tu) * np.where(valid0, fan_vals[b1, u0c], 0.0)
    out += tb * tu * np.where(valid1, fan_vals[b1, u1c], 0.0)
    return Sinogram(geometry=target, values=out)
