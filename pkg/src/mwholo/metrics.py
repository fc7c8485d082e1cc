"""Image quality metrics for reconstructed amplitude maps.

Speckle is scored with sliding-window statistics: every pixel gets the
ratio (local standard deviation / local mean) of its window-by-window
neighborhood, boundaries handled by symmetric extension, and the speckle
index is the mean ratio over pixels with positive local mean.  The
window SNR is its reciprocal.  Structural similarity uses the constant
pair c1 = (0.01*L)^2, c2 = (0.03*L)^2 for dynamic range L, uniform
window means, and population (biased) variances.

These metrics are intended for nonnegative images.  Windows whose local
mean is not positive are excluded and counted rather than poisoning the
average, which also tolerates the tiny negative undershoot resampling
can introduce.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy import ndimage

from .fields import RealField

__all__ = [
    "QualityReport",
    "speckle_ratio_map",
    "speckle_index",
    "snr",
    "ssim",
    "quality_report",
    "mask_energy_fraction",
]


def _check_window(window: int, shape: tuple[int, int]) -> None:
    if not isinstance(window, (int, np.integer)):
        raise TypeError(f"window must be an integer, got {window!r}")
    if window < 3 or window % 2 == 0:
        raise ValueError(f"window must be an odd integer >= 3, got {window}")
    if window > min(shape):
        raise ValueError(f"window {window} exceeds the image's smaller side {min(shape)}")


def _as_array(image: RealField | np.ndarray) -> np.ndarray:
    if isinstance(image, RealField):
        return image.samples
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d image, got shape {arr.shape}")
    return arr


def speckle_ratio_map(
    image: RealField | np.ndarray, window: int = 7
) -> tuple[np.ndarray, np.ndarray]:
    """Per-pixel (sigma/mu, valid) arrays over sliding windows.

    Boundary windows read symmetrically extended samples.  valid marks
    pixels whose window mean is positive; the ratio is NaN elsewhere.
    """
    arr = _as_array(image)
    _check_window(window, arr.shape)
    half = window // 2
    padded = np.pad(arr, half, mode="symmetric")
    tiles = sliding_window_view(padded, (window, window))
    mu = tiles.mean(axis=(2, 3))
    sigma = tiles.std(axis=(2, 3))  # population std, ddof = 0
    valid = mu > 0
    ratio = np.where(valid, sigma / np.where(valid, mu, 1.0), np.nan)
    return ratio, valid


def speckle_index(image: RealField | np.ndarray, window: int = 7) -> float:
    """Mean sigma/mu over valid windows.  Raises if no window is valid
    (for instance an all-zero image)."""
    ratio, valid = speckle_ratio_map(image, window)
    if not valid.any():
        raise ValueError("speckle index undefined: no window has positive mean")
    return float(ratio[valid].mean())


def snr(image: RealField | np.ndarray, window: int = 7) -> float:
    """Reciprocal speckle index.  A constant image has zero speckle and an
    unbounded SNR, reported as +inf rather than an error."""
    si = speckle_index(image, window)
    if si == 0.0:
        return float("inf")
    return 1.0 / si


def ssim(
    x: RealField | np.ndarray,
    y: RealField | np.ndarray,
    window: int = 7,
    dynamic_range: float | None = None,
) -> float:
    """Mean structural similarity between two same-shape images.

    dynamic_range defaults to the peak-to-peak range of x (falling back
    to 1.0 for a constant x); pass it explicitly when comparing against a
    fixed scale.  Symmetric in its inputs once dynamic_range is fixed.
    Bounded by 1, with equality exactly for identical images.
    """
    ax = _as_array(x)
    ay = _as_array(y)
    if ax.shape != ay.shape:
        raise ValueError(f"image shapes differ: {ax.shape} vs {ay.shape}")
    _check_window(window, ax.shape)
    if dynamic_range is None:
        span = float(ax.max() - ax.min())
        dynamic_range = span if span > 0 else 1.0
    if not dynamic_range > 0:
        raise ValueError(f"dynamic range must be positive, got {dynamic_range}")
    c1 = (0.01 * dynamic_range) ** 2
    c2 = (0.03 * dynamic_range) ** 2
    size = (window, window)
    mu_x = ndimage.uniform_filter(ax, size=size, mode="reflect")
    mu_y = ndimage.uniform_filter(ay, size=size, mode="reflect")
    xx = ndimage.uniform_filter(ax * ax, size=size, mode="reflect")
    yy = ndimage.uniform_filter(ay * ay, size=size, mode="reflect")
    xy = ndimage.uniform_filter(ax * ay, size=size, mode="reflect")
    var_x = xx - mu_x * mu_x
    var_y = yy - mu_y * mu_y
    cov = xy - mu_x * mu_y
    num = (2 * mu_x * mu_y + c1) * (2 * cov + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    return float(np.mean(num / den))


def mask_energy_fraction(
    image: RealField | np.ndarray, mask: np.ndarray, dilate: int = 0
) -> float:
    """Fraction of squared-image energy inside a boolean mask, optionally
    dilated by whole pixels first.  Zero-energy images score 0."""
    arr = _as_array(image)
    m = np.asarray(mask, dtype=bool)
    if m.shape != arr.shape:
        raise ValueError(f"mask shape {m.shape} does not match image {arr.shape}")
    if dilate < 0:
        raise ValueError(f"dilate must be nonnegative, got {dilate}")
    if dilate:
        m = ndimage.binary_dilation(m, iterations=dilate)
    energy = float(np.sum(arr**2))
    if energy == 0.0:
        return 0.0
    return float(np.sum((arr**2)[m]) / energy)


@dataclass(frozen=True)
class QualityReport:
    """Speckle/SNR scores for one image, plus SSIM (with its stabilizer
    constants c1, c2) when a reference image is given."""

    speckle_index: float
    snr: float
    snr_unbounded: bool
    window: int
    excluded_pixels: int
    ssim: float | None = None
    dynamic_range: float | None = None
    c1: float | None = None
    c2: float | None = None

    def summary(self) -> str:
        lines = [
            f"speckle index: {self.speckle_index:.4f} (window {self.window},"
            f" {self.excluded_pixels} pixels excluded)",
            "window snr: unbounded (constant image)"
            if self.snr_unbounded
            else f"window snr: {self.snr:.4f}",
        ]
        if self.ssim is not None:
            lines.append(
                f"ssim: {self.ssim:.4f} (dynamic range {self.dynamic_range:g},"
                f" c1 {self.c1:.3g}, c2 {self.c2:.3g})"
            )
        return "\n".join(lines)


def quality_report(
    image: RealField | np.ndarray,
    window: int = 7,
    reference: RealField | np.ndarray | None = None,
    dynamic_range: float | None = None,
) -> QualityReport:
    """Bundle the metrics for one image.  reference, when given, must share
    the image's shape and contributes the SSIM entry."""
    ratio, valid = speckle_ratio_map(image, window)
    if not valid.any():
        raise ValueError("quality report undefined: no window has positive mean")
    si = float(ratio[valid].mean())
    unbounded = si == 0.0
    similarity = None
    used_range = None
    if reference is not None:
        ref = _as_array(reference)
        if dynamic_range is None:
            span = float(ref.max() - ref.min())
            used_range = span if span > 0 else 1.0
        else:
            used_range = dynamic_range
        similarity = ssim(reference, image, window=window, dynamic_range=used_range)
    return QualityReport(
        speckle_index=si,
        snr=float("inf") if unbounded else 1.0 / si,
        snr_unbounded=unbounded,
        window=window,
        excluded_pixels=int(np.size(valid) - np.count_nonzero(valid)),
        ssim=similarity,
        dynamic_range=used_range,
        c1=None if used_range is None else (0.01 * used_range) ** 2,
        c2=None if used_range is None else (0.03 * used_range) ** 2,
    )
