"""Free-space propagation by the angular spectrum method.

A field sampled on the scan plane is advanced a distance d (mm) by
multiplying its centered spectrum with exp(-1j * d * kz), where
kz = sqrt(kappa^2 - kx^2 - ky^2) on propagating bins and the evanescent
bins (kappa^2 < kx^2 + ky^2) are zeroed.  kappa is the effective
wavenumber: k for one-way travel, 2k for the monostatic round trip where
transmit and receive are collocated and every path is traversed twice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import ComplexField, ScanGrid, SpectralGrid

__all__ = [
    "C_MM_PER_NS",
    "PROPAGATION_MODES",
    "wavenumber",
    "PropagationParams",
    "AntennaGeometry",
    "antenna_separation",
    "asm_propagate",
]

# speed of light in mm/ns; frequencies are GHz so k = 2*pi*f/c is rad/mm
C_MM_PER_NS = 299.792458

PROPAGATION_MODES = ("monostatic", "one-way")


def wavenumber(frequency: float) -> float:
    """Free-space wavenumber in rad/mm for a frequency in GHz."""
    if not frequency > 0:
        raise ValueError(f"frequency must be positive, got {frequency}")
    return 2.0 * np.pi * frequency / C_MM_PER_NS


@dataclass(frozen=True)
class PropagationParams:
    """Frequency (GHz) and travel mode for angular-spectrum propagation."""

    frequency: float
    mode: str = "monostatic"

    def __post_init__(self) -> None:
        wavenumber(self.frequency)  # range check
        if self.mode not in PROPAGATION_MODES:
            raise ValueError(
                f"mode must be one of {PROPAGATION_MODES}, got {self.mode!r}"
            )

    @property
    def k(self) -> float:
        """One-way wavenumber, rad/mm."""
        return wavenumber(self.frequency)

    @property
    def kappa(self) -> float:
        """Effective wavenumber used in the propagator: 2k monostatic, k one-way."""
        return 2.0 * self.k if self.mode == "monostatic" else self.k

    @property
    def wavelength(self) -> float:
        """Free-space wavelength in mm."""
        return 2.0 * np.pi / self.k


def antenna_separation(ds: float, beam_angle: float) -> float:
    """Transmit/receive spacing da = 2 * ds * tan(beam_angle) for a probe
    pair converging on a point ds mm away, beam_angle in degrees."""
    if not ds > 0:
        raise ValueError(f"standoff ds must be positive, got {ds}")
    if not 0 < beam_angle < 90:
        raise ValueError(f"beam angle must be in (0, 90) degrees, got {beam_angle}")
    return 2.0 * ds * math.tan(math.radians(beam_angle))


@dataclass(frozen=True)
class AntennaGeometry:
    """Scan standoff ds (mm) and half-beamwidth (degrees) of the probe pair."""

    ds: float
    beam_angle: float

    def __post_init__(self) -> None:
        antenna_separation(self.ds, self.beam_angle)  # range checks

    @property
    def da(self) -> float:
        """Antenna separation implied by the geometry, mm."""
        return antenna_separation(self.ds, self.beam_angle)


def propagation_kernel(grid: ScanGrid, kappa: float, distance: float) -> np.ndarray:
    """Centered transfer function exp(-1j*distance*kz) with evanescent bins
    zeroed.  distance may be negative (the conjugate, backward kernel)."""
    if not kappa > 0:
        raise ValueError(f"effective wavenumber must be positive, got {kappa}")
    kxm, kym = SpectralGrid(grid).meshes()
    arg = kappa * kappa - kxm * kxm - kym * kym
    propagating = arg >= 0.0
    kz = np.sqrt(np.where(propagating, arg, 0.0))
    kernel = np.exp(-1j * distance * kz)
    return np.where(propagating, kernel, 0.0 + 0.0j)


def asm_propagate(field: ComplexField, distance: float, params: PropagationParams) -> ComplexField:
    """Propagate a sampled field a distance (mm) along +z.

    Round trip identity: propagating by d and then by -d returns the
    band-limited part of the input exactly (evanescent content is lost
    once, on the first application).
    """
    spectrum = np.fft.fftshift(np.fft.fft2(field.samples))
    kernel = propagation_kernel(field.grid, params.kappa, distance)
    out = np.fft.ifft2(np.fft.ifftshift(spectrum * kernel))
    return ComplexField(field.grid, out)
