"""Scan grids, sampled wavefields, and the shared Fourier conventions.

Distances are millimetres and spatial frequencies rad/mm throughout the
package.  Field samples are stored row-major with shape (ny, nx), so the
x index is the fastest-varying axis.  The transform pair is unscaled
forward / 1/(nx*ny) inverse, and a "centered" spectrum is one circularly
shifted by half the grid so the zero-frequency bin sits at
(ny // 2, nx // 2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ScanGrid",
    "ComplexField",
    "RealField",
    "SpectralGrid",
    "dft2",
    "center_spectrum",
    "uncenter_spectrum",
    "total_power",
]


@dataclass(frozen=True)
class ScanGrid:
    """Rectangular scan aperture: pixel counts and sample spacings in mm."""

    nx: int
    ny: int
    dx: float
    dy: float

    def __post_init__(self) -> None:
        if not (isinstance(self.nx, (int, np.integer)) and isinstance(self.ny, (int, np.integer))):
            raise TypeError(f"pixel counts must be integers, got nx={self.nx!r}, ny={self.ny!r}")
        if self.nx < 2 or self.ny < 2:
            raise ValueError(f"grid must be at least 2x2, got {self.nx}x{self.ny}")
        if not (self.dx > 0 and self.dy > 0):
            raise ValueError(f"sample spacings must be positive, got dx={self.dx}, dy={self.dy}")

    @property
    def shape(self) -> tuple[int, int]:
        """Array shape (ny, nx) of fields sampled on this grid."""
        return (self.ny, self.nx)

    @property
    def extent(self) -> tuple[float, float]:
        """Physical aperture size (x, y) in mm."""
        return (self.nx * self.dx, self.ny * self.dy)

    def x_coords(self) -> np.ndarray:
        """Pixel-center x coordinates in mm, centered on the aperture."""
        return (np.arange(self.nx) - (self.nx - 1) / 2.0) * self.dx

    def y_coords(self) -> np.ndarray:
        """Pixel-center y coordinates in mm, centered on the aperture."""
        return (np.arange(self.ny) - (self.ny - 1) / 2.0) * self.dy


def _frozen_samples(samples: object, grid: ScanGrid, dtype: np.dtype, kind: str) -> np.ndarray:
    arr = np.array(samples, dtype=dtype, order="C", copy=True)
    if arr.shape != grid.shape:
        raise ValueError(
            f"{kind} samples have shape {arr.shape}, expected {grid.shape} for this grid"
        )
    finite = np.isfinite(arr)
    if not finite.all():
        iy, ix = np.argwhere(~finite)[0]
        raise ValueError(f"non-finite {kind} sample at (y={iy}, x={ix}): {arr[iy, ix]!r}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class ComplexField:
    """Complex-valued samples on a scan grid.

    The sample array is copied on construction, validated to be finite,
    and made read-only, so a field value can be shared freely.
    """

    grid: ScanGrid
    samples: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "samples", _frozen_samples(self.samples, self.grid, np.complex128, "complex")
        )

    def with_samples(self, samples: np.ndarray) -> "ComplexField":
        """New field on the same grid with different samples."""
        return ComplexField(self.grid, samples)


@dataclass(frozen=True)
class RealField:
    """Real-valued samples on a scan grid (holograms, amplitude and phase maps)."""

    grid: ScanGrid
    samples: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "samples", _frozen_samples(self.samples, self.grid, np.float64, "real")
        )

    def with_samples(self, samples: np.ndarray) -> "RealField":
        return RealField(self.grid, samples)


@dataclass(frozen=True)
class SpectralGrid:
    """Spatial-frequency coordinates (rad/mm) of the centered spectrum of a grid."""

    grid: ScanGrid

    def kx(self) -> np.ndarray:
        """Centered kx bin coordinates, length nx, zero at index nx // 2."""
        return 2.0 * np.pi * np.fft.fftshift(np.fft.fftfreq(self.grid.nx, d=self.grid.dx))

    def ky(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftshift(np.fft.fftfreq(self.grid.ny, d=self.grid.dy))

    def meshes(self) -> tuple[np.ndarray, np.ndarray]:
        """(KX, KY) coordinate arrays of shape (ny, nx)."""
        return np.meshgrid(self.kx(), self.ky())


def dft2(field: ComplexField | RealField, direction: str = "forward") -> ComplexField:
    """Two-dimensional DFT of a field's samples.

    Unscaled forward, 1/(nx*ny) inverse, matching the package-wide
    convention.  The output is uncentered (zero frequency at index 0);
    use center_spectrum to shift it for display or windowing.
    """
    if direction == "forward":
        out = np.fft.fft2(field.samples)
    elif direction == "inverse":
        out = np.fft.ifft2(field.samples)
    else:
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    return ComplexField(field.grid, out)


def center_spectrum(spectrum: ComplexField) -> ComplexField:
    """Circularly shift an uncentered spectrum so zero frequency sits at
    (ny // 2, nx // 2).  Index map per axis: m -> (m + n//2) mod n."""
    return ComplexField(spectrum.grid, np.fft.fftshift(spectrum.samples))


def uncenter_spectrum(spectrum: ComplexField) -> ComplexField:
    """Inverse of center_spectrum."""
    return ComplexField(spectrum.grid, np.fft.ifftshift(spectrum.samples))


def total_power(field: ComplexField | RealField) -> float:
    """Sum of squared sample magnitudes.

    With the package DFT scaling, total_power(x) == total_power(dft2(x)) /
    (nx * ny), which the tests pin as the Parseval check.
    """
    return float(np.sum(np.abs(field.samples) ** 2))
