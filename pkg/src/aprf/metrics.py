"""PSNR and SSIM with fixed, reproducible settings.

SSIM uses a 7x7 uniform window, K1=0.01, K2=0.03, unbiased covariance
normalization, and averages only over windows fully inside the image.
The data range for both metrics is max(gt) - min(gt).
"""

from __future__ import annotations

import numpy as np
from scipy.ndimage import uniform_filter

from .geometry import Image2D, MetricReport

_WIN = 7
_K1 = 0.01
_K2 = 0.03


def psnr(pred: np.ndarray, gt: np.ndarray, data_range: float) -> float:
    mse = float(np.mean((pred - gt) ** 2))
    if mse == 0.0:
        return float("inf")
    return 10.0 * np.log10(data_range**2 / mse)


def ssim(pred: np.ndarray, gt: np.ndarray, data_range: float) -> float:
    if min(pred.shape) < _WIN:
        raise ValueError(f"images must be at least {_WIN}x{_WIN} for SSIM")
    x = pred.astype(np.float64)
    y = gt.astype(np.float64)
    c1 = (_K1 * data_range) ** 2
    c2 = (_K2 * data_range) ** 2
    np_win = _WIN * _WIN
    cov_norm = np_win / (np_win - 1)  # unbiased sample covariance

    ux = uniform_filter(x, size=_WIN)
    uy = uniform_filter(y, size=_WIN)
    uxx = uniform_filter(x * x, size=_WIN)
    uyy = uniform_filter(y * y, size=_WIN)
    uxy = uniform_filter(x * y, size=_WIN)
    vx = cov_norm * (uxx - ux * ux)
    vy = cov_norm * (uyy - uy * uy)
    vxy = cov_norm * (uxy - ux * uy)

    s = ((2 * ux * uy + c1) * (2 * vxy + c2)) / ((ux**2 + uy**2 + c1) * (vx + vy + c2))
    pad = (_WIN - 1) // 2
    return float(s[pad:-pad, pad:-pad].mean())


def compute_metrics(pred: Image2D, gt: Image2D) -> MetricReport:
    """PSNR/SSIM of a prediction against ground truth of identical shape."""
    if pred.values.shape != gt.values.shape:
        raise ValueError(
            f"image shapes differ: {pred.values.shape} vs {gt.values.shape}"
        )
    data_range = float(gt.values.max() - gt.values.min())
    if data_range == 0.0:
        data_range = 1.0
    return MetricReport(
        psnr=psnr(pred.values, gt.values, data_range),
        ssim=ssim(pred.values, gt.values, data_range),
    )
