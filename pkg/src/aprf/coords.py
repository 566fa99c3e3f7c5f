"""Coordinate normalization and sinusoidal positional encoding.

Sinogram indices (view row, detector column) are mapped into a padded
symmetric field space strictly inside (-1, 1), then lifted to a Fourier
feature vector before entering the network.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NormalizationParams:
    """Per-axis extents of the index grid plus the padding margin.

    ``dims`` holds the grid extents, e.g. ``(num_views, num_detectors)``
    for a 2D sinogram.  ``padding`` widens the denominator so that every
    valid (possibly fractional) index lands strictly inside (-1, 1).
    """

    dims: tuple[int, ...]
    padding: int = 1

    def __post_init__(self):
        if len(self.dims) not in (2, 3):
            raise ValueError(f"expected 2 or 3 axes, got {len(self.dims)}")
        if any(int(d) < 1 for d in self.dims):
            raise ValueError(f"all extents must be >= 1, got {self.dims}")
        if self.padding < 1:
            raise ValueError(f"padding must be >= 1, got {self.padding}")

    @property
    def ndim(self) -> int:
        return len(self.dims)


def normalize_index(idx, params: NormalizationParams) -> np.ndarray:
    """Map grid indices to field coordinates.

    Each axis uses ``(2*i - n) / (n + 2*p)`` where ``n`` is the axis extent
    and ``p`` the padding.  Fractional indices are accepted (the map extends
    continuously); they arise when dense synthesis places view angles
    between the sparse grid lines.

    Parameters
    ----------
    idx : array_like
        Indices with shape ``(..., ndim)``; the last axis enumerates grid
        axes in the same order as ``params.dims``.
    params : NormalizationParams

    Returns
    -------
    np.ndarray
        Coordinates of the same shape, every component strictly in (-1, 1).
    """
    idx = np.asarray(idx, dtype=np.float64)
    if idx.shape[-1:] != (params.ndim,):
        raise ValueError(
            f"index has {idx.shape[-1] if idx.ndim else 0} components, "
            f"normalization expects {params.ndim}"
        )
    dims = np.asarray(params.dims, dtype=np.float64)
    if np.any(idx < 0.0) or np.any(idx >= dims):
        raise ValueError("index out of range [0, dim) on some axis")
    return (2.0 * idx - dims) / (dims + 2.0 * params.padding)


def encoded_length(ndim: int, omega: int) -> int:
    """Length of the encoding of an ``ndim`` coordinate at ``omega`` bands."""
    return ndim + 2 * ndim * omega


def positional_encode(x, omega: int) -> np.ndarray:
    """Fourier-feature lift of normalized coordinates.

    The output concatenates the raw coordinate with sine/cosine pairs at
    dyadic frequencies 2^0 .. 2^(omega-1).  Layout along the last axis:
    first the ``d`` raw components, then one block per frequency, each block
    holding ``(sin(f*x_k), cos(f*x_k))`` for every component ``k`` in order.

    No extra pi factor is applied to the frequencies; the raw dyadic scale
    acts directly on coordinates in (-1, 1).
    """
    if omega < 0:
        raise ValueError(f"omega must be >= 0, got {omega}")
    x = np.asarray(x, dtype=np.float64)
    squeeze = x.ndim == 1
    x2 = np.atleast_2d(x)
    n, d = x2.shape
    if omega == 0:
        out = x2.copy()
    else:
        freqs = np.exp2(np.arange(omega, dtype=np.float64))
        scaled = x2[:, None, :] * freqs[None, :, None]  # (n, omega, d)
        trig = np.empty((n, omega, d, 2), dtype=np.float64)
        np.sin(scaled, out=trig[..., 0])
        np.cos(scaled, out=trig[..., 1])
        out = np.concatenate([x2, trig.reshape(n, 2 * d * omega)], axis=1)
    return out[0] if squeeze else out
