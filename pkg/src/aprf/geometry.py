"""Domain containers: images, acquisition geometry, sinograms, metric reports."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

PARALLEL = "parallel"
FAN = "fan"


@dataclass
class Image2D:
    """Dense grid of nonnegative attenuation values on square pixels."""

    values: np.ndarray
    pixel_size: float = 1.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2 or self.values.size == 0:
            raise ValueError("image values must be a nonempty 2D grid")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("image values must be finite")
        if self.pixel_size <= 0:
            raise ValueError(f"pixel_size must be > 0, got {self.pixel_size}")

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def half_diagonal(self) -> float:
        """Physical distance from center to corner."""
        return 0.5 * math.hypot(self.width, self.height) * self.pixel_size


@dataclass(frozen=True)
class FanParams:
    source_to_axis: float
    source_to_detector: float

    def __post_init__(self):
        if not (self.source_to_detector > self.source_to_axis > 0):
            raise ValueError(
                "need source_to_detector > source_to_axis > 0, got "
                f"{self.source_to_detector}, {self.source_to_axis}"
            )


@dataclass(frozen=True)
class SinogramGeometry:
    """Projection layout: beam type, view angles and detector line.

    ``angular_range`` is a half-open interval; the ``num_views`` angles
    uniformly partition it with the endpoint excluded.  ``fan`` must be
    present exactly when ``beam == "fan"``.
    """

    beam: str
    num_views: int
    num_detectors: int
    angular_range: tuple[float, float] = (0.0, math.pi)
    detector_spacing: float = 1.0
    fan: FanParams | None = None

    def __post_init__(self):
        if self.beam not in (PARALLEL, FAN):
            raise ValueError(f"beam must be 'parallel' or 'fan', got {self.beam!r}")
        if self.num_views < 1 or self.num_detectors < 1:
            raise ValueError("num_views and num_detectors must be >= 1")
        lo, hi = self.angular_range
        if not hi > lo:
            raise ValueError(f"angular_range end must exceed start, got {self.angular_range}")
        if self.detector_spacing <= 0:
            raise ValueError("detector_spacing must be > 0")
        if (self.fan is not None) != (self.beam == FAN):
            raise ValueError("fan parameters are required iff beam == 'fan'")

    def view_angles(self) -> np.ndarray:
        lo, hi = self.angular_range
        return lo + (hi - lo) * np.arange(self.num_views) / self.num_views

    def detector_positions(self) -> np.ndarray:
        w = self.num_detectors
        return (np.arange(w) - (w - 1) / 2.0) * self.detector_spacing

    def with_views(self, num_views: int) -> "SinogramGeometry":
        return replace(self, num_views=num_views)


@dataclass
class Sinogram:
    """Line-integral measurements on a ``num_views x num_detectors`` grid."""

    geometry: SinogramGeometry
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        expected = (self.geometry.num_views, self.geometry.num_detectors)
        if self.values.shape != expected:
            raise ValueError(f"sinogram shape {self.values.shape} != geometry {expected}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("sinogram values must be finite")


@dataclass(frozen=True)
class MetricReport:
    """Image-quality summary; ``psnr`` is ``inf`` for identical inputs."""

    psnr: float
    ssim: float


def parallel_geometry(
    image: Image2D,
    num_views: int,
    num_detectors: int | None = None,
    angular_range: tuple[float, float] = (0.0, math.pi),
) -> SinogramGeometry:
    """Parallel-beam layout whose detector line covers the whole image."""
    if num_detectors is None:
        num_detectors = int(math.ceil(2.0 * image.half_diagonal / image.pixel_size)) + 3
    return SinogramGeometry(
        beam=PARALLEL,
        num_views=num_views,
        num_detectors=num_detectors,
        angular_range=angular_range,
        detector_spacing=image.pixel_size,
    )


def fan_geometry(
    image: Image2D,
    num_views: int,
    num_detectors: int | None = None,
    angular_range: tuple[float, float] = (0.0, 2.0 * math.pi),
    source_to_axis: float | None = None,
    source_to_detector: float | None = None,
) -> SinogramGeometry:
    """Fan-beam layout keeping the image inside the fan at every angle.

    Defaults put the source at twice the image half-diagonal and the
    detector at twice that again, with the detector sized so its fan
    encloses the image bounding circle.
    """
    hd = image.half_diagonal
    if source_to_axis is None:
        source_to_axis = 2.0 * hd
    if source_to_detector is None:
        source_to_detector = 2.0 * source_to_axis
    if num_detectors is None:
        num_detectors = int(math.ceil(2.0 * hd / image.pixel_size)) + 3
    # Half-width on the detector subtending the image circle, plus margin.
    half_angle = math.asin(min(1.0, hd / source_to_axis))
    half_width = source_to_detector * math.tan(half_angle) * 1.05
    spacing = 2.0 * half_width / num_detectors
    return SinogramGeometry(
        beam=FAN,
        num_views=num_views,
        num_detectors=num_detectors,
        angular_range=angular_range,
        detector_spacing=spacing,
        fan=FanParams(source_to_axis=source_to_axis, source_to_detector=source_to_detector),
    )


def sparsify_views(sino: Sinogram, keep: int) -> Sinogram:
    """Keep every (L/keep)-th view of a uniformly sampled sinogram."""
    num_views = sino.geometry.num_views
    if keep < 1 or keep > num_views:
        raise ValueError(f"keep must be in [1, {num_views}], got {keep}")
    if num_views % keep != 0:
        raise ValueError(f"{keep} views do not uniformly subsample {num_views}")
    stride = num_views // keep
    return Sinogram(
        geometry=sino.geometry.with_views(keep),
        values=sino.values[::stride].copy(),
    )
