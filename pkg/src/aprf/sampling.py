"""Segment sampling along the view axis with counter-based randomness.

Randomness is derived from a stateless 64-bit mixing function keyed by
(seed, stream tag, ray id, sample index).  Any ray's samples can be
regenerated independently of batch order or parallel scheduling, which
keeps training, re-evaluation and dense synthesis bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_U53 = np.uint64(11)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z + _GOLDEN).astype(np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def counter_uniforms(seed: int, tag: int, ray_ids, n: int) -> np.ndarray:
    """Uniform [0, 1) draws of shape ``(len(ray_ids), n)``.

    Each (seed, tag, ray, index) tuple maps to one fixed draw.
    """
    rays = np.atleast_1d(np.asarray(ray_ids)).astype(np.uint64)
    idx = np.arange(n, dtype=np.uint64)
    h = _mix64(np.asarray(np.uint64(seed & 0xFFFFFFFFFFFFFFFF))[None])
    h = _mix64(h ^ np.uint64(tag & 0xFFFFFFFFFFFFFFFF))
    h = _mix64(h[:, None] ^ rays[None, :]).reshape(-1)
    h = _mix64(h[:, None] ^ idx[None, :])
    return (h >> _U53).astype(np.float64) * (2.0**-53)


@dataclass(frozen=True)
class SegmentSpec:
    """A sampling interval of length ``rho`` centered on a field coordinate.

    The segment spans only ``axis`` (the projection-view axis); its
    endpoints must stay inside (-1, 1) on that axis.
    """

    center: np.ndarray
    rho: float
    axis: int = 0

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=np.float64))
        if self.center.ndim != 1 or not 0 <= self.axis < self.center.size:
            raise ValueError("center must be a vector containing the spanned axis")
        if not np.all(np.abs(self.center) < 1.0):
            raise ValueError("segment center must lie strictly inside (-1, 1)")
        if not self.rho > 0:
            raise ValueError(f"rho must be > 0, got {self.rho}")
        if abs(self.center[self.axis]) + self.rho / 2.0 >= 1.0:
            raise ValueError("segment endpoints escape (-1, 1) on the spanned axis")


@dataclass
class SegmentSampleSet:
    """Samples of one segment, ordered by distance from the center.

    ``offsets`` holds the sorted distances, ``positions`` the full sampled
    coordinates in matching order.  Ties between mirror-image samples are
    broken by signed offset, keeping the ordering deterministic.
    """

    spec: SegmentSpec
    offsets: np.ndarray
    positions: np.ndarray

    def __post_init__(self):
        self.offsets = np.asarray(self.offsets, dtype=np.float64)
        self.positions = np.asarray(self.positions, dtype=np.float64)
        if self.offsets.ndim != 1 or self.positions.shape != (
            self.offsets.size,
            self.spec.center.size,
        ):
            raise ValueError("offsets/positions shapes disagree")
        if np.any(np.diff(self.offsets) < 0):
            raise ValueError("offsets must be sorted ascending")
        if np.any(self.offsets > self.spec.rho / 2.0 + 1e-12):
            raise ValueError("offset beyond rho/2")

    @property
    def n(self) -> int:
        return self.offsets.size


def sorted_signed_offsets(u: np.ndarray, rho: float) -> tuple[np.ndarray, np.ndarray]:
    """Turn uniform draws (rows of rays) into sorted signed offsets.

    Returns ``(signed, nu)`` where each row of ``nu = |signed|`` ascends,
    tie-broken by the signed value.
    """
    signed = (u - 0.5) * rho
    nu = np.abs(signed)
    order = np.lexsort((signed, nu), axis=-1)
    signed = np.take_along_axis(signed, order, axis=-1)
    nu = np.take_along_axis(nu, order, axis=-1)
    return signed, nu


def sample_segment(spec: SegmentSpec, n: int, rng_seed: int) -> SegmentSampleSet:
    """Draw ``n`` i.i.d. uniform samples on the segment, sorted by distance."""
    if n < 2:
        raise ValueError(f"need at least 2 samples for quadrature, got {n}")
    u = counter_uniforms(rng_seed, 0, [0], n)
    signed, nu = sorted_signed_offsets(u, spec.rho)
    positions = np.tile(spec.center, (n, 1))
    positions[:, spec.axis] += signed[0]
    return SegmentSampleSet(spec=spec, offsets=nu[0], positions=positions)


def point_sample_baseline(center) -> SegmentSampleSet:
    """Degenerate single-sample set: the prediction reduces to c(center)."""
    center = np.asarray(center, dtype=np.float64)
    spec = SegmentSpec(center=center, rho=min(1e-6, (1.0 - np.abs(center).max())), axis=0)
    return SegmentSampleSet(
        spec=spec,
        offsets=np.zeros(1),
        positions=center[None, :].copy(),
    )
