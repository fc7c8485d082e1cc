"""Fourier orders of a recorded hologram: locating the carrier-shifted
interference term and filtering it back to baseband.

A combined-port hologram 4*Re(O*conj(R)) = 2*O*conj(R) + 2*conj(O)*R has
two spectral islands: one at the carrier bin and its conjugate mirror at
the opposite bin.  With the reference ramp exp(-1j*phase_step*(m+n)) and
the package's forward DFT, the retained island (the "+1 order" of the
reconstruction chain) sits at -phase_step*n/(2*pi) bins per axis and
holds E0*conj(O_lowpass); extraction windows it, rolls it to DC, removes
the fractional carrier residue the integer roll cannot, and conjugates,
leaving E0 times the band-limited object field.  The combined port
carries twice that weight per island (see the holograms module algebra).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import ComplexField, ScanGrid, center_spectrum, dft2
from .holograms import Hologram
from .reference import ReferenceWaveSpec

__all__ = [
    "OrderMap",
    "hologram_spectrum",
    "predicted_plus_one",
    "locate_orders",
    "default_window_radius",
    "extract_plus_one",
]


@dataclass(frozen=True)
class OrderMap:
    """Located spectral orders, in centered-bin units as (x, y) pairs.

    plus_one_index is the integer bin the windowing step centers on;
    predicted_plus_one is the (generally fractional) bin the reference
    spec says the carrier occupies.  The conjugate order is always the
    point reflection of the located one, and DC is the origin by
    construction.
    """

    plus_one_index: tuple[int, int]
    predicted_plus_one: tuple[float, float]

    def __post_init__(self) -> None:
        px, py = self.plus_one_index
        if px == 0 and py == 0:
            raise ValueError("plus-one order cannot sit on DC")

    @property
    def dc_index(self) -> tuple[int, int]:
        return (0, 0)

    @property
    def minus_one_index(self) -> tuple[int, int]:
        px, py = self.plus_one_index
        return (-px, -py)


def hologram_spectrum(holo: Hologram) -> ComplexField:
    """Centered spectrum of the hologram samples.  Real input makes it
    conjugate symmetric: S[-k] == conj(S[k]) bin for bin."""
    return center_spectrum(dft2(holo.data))


def predicted_plus_one(spec: ReferenceWaveSpec) -> tuple[float, float]:
    """Fractional centered bin of the reference carrier, per axis (x, y)."""
    return (
        -spec.phase_step * spec.grid.nx / (2.0 * np.pi),
        -spec.phase_step * spec.grid.ny / (2.0 * np.pi),
    )


def _centered_range(n: int) -> tuple[int, int]:
    # inclusive centered bin range for an n-point axis
    return (-(n // 2), n - 1 - n // 2)


def locate_orders(spectrum: ComplexField, ref_spec: ReferenceWaveSpec) -> OrderMap:
    """Find the +1 order near its predicted bin.

    Searches a +/-2 bin box around the rounded prediction for the
    largest-magnitude bin, never accepting DC or its eight neighbors.
    Fails if the predicted carrier is not representable on the grid
    (rounded bin outside the centered range on either axis).
    """
    grid = spectrum.grid
    pred = predicted_plus_one(ref_spec)
    lo_x, hi_x = _centered_range(grid.nx)
    lo_y, hi_y = _centered_range(grid.ny)
    rx, ry = int(np.round(pred[0])), int(np.round(pred[1]))
    if not (lo_x <= rx <= hi_x and lo_y <= ry <= hi_y):
        raise ValueError(
            f"predicted carrier bin ({pred[0]:.2f}, {pred[1]:.2f}) is outside the"
            f" representable range x [{lo_x}, {hi_x}], y [{lo_y}, {hi_y}]"
        )
    cx, cy = grid.nx // 2, grid.ny // 2
    mag = np.abs(spectrum.samples)
    best = None
    for by in range(max(lo_y, ry - 2), min(hi_y, ry + 2) + 1):
        for bx in range(max(lo_x, rx - 2), min(hi_x, rx + 2) + 1):
            if max(abs(bx), abs(by)) <= 1:
                continue  # DC and its neighbors are never the carrier
            value = mag[cy + by, cx + bx]
            if best is None or value > best[0]:
                best = (value, bx, by)
    if best is None:
        raise ValueError(
            f"no admissible bins near predicted carrier ({pred[0]:.2f}, {pred[1]:.2f});"
            " the carrier is too close to DC"
        )
    return OrderMap(plus_one_index=(best[1], best[2]), predicted_plus_one=pred)


def default_window_radius(order_map: OrderMap, grid: ScanGrid) -> int:
    """Radius rule used when none is configured: as large as possible
    without touching DC, capped at a sixth of the smaller grid side."""
    px, py = order_map.plus_one_index
    cheb = max(abs(px), abs(py))
    radius = int(np.floor(min(cheb - 1, min(grid.nx, grid.ny) / 6.0)))
    if radius < 1:
        raise ValueError(
            f"carrier at {order_map.plus_one_index} leaves no room for a filter window"
        )
    return radius


def extract_plus_one(
    spectrum: ComplexField, order_map: OrderMap, radius_bins: int
) -> ComplexField:
    """Window the +1 order and demodulate it to baseband.

    Steps: circular window of radius_bins around the located bin; integer
    circular shift of that bin to DC; per-axis ramp multiply in the
    spatial domain to remove the fractional bin residue (predicted minus
    located); conjugation, because the retained island holds the
    conjugated object field.  Returns the centered baseband spectrum; its
    inverse transform approximates E0 times the band-limited object field
    (twice that for a combined-port spectrum).
    """
    if not isinstance(radius_bins, (int, np.integer)) or radius_bins < 1:
        raise ValueError(f"radius_bins must be a positive integer, got {radius_bins!r}")
    grid = spectrum.grid
    px, py = order_map.plus_one_index
    cheb = max(abs(px), abs(py))
    if radius_bins >= cheb:
        raise ValueError(
            f"radius_bins = {radius_bins} would reach DC: it must be smaller than"
            f" the carrier offset {cheb} bins"
        )
    cx, cy = grid.nx // 2, grid.ny // 2
    bx = np.arange(grid.nx) - cx
    by = np.arange(grid.ny) - cy
    bxm, bym = np.meshgrid(bx, by)
    window = (bxm - px) ** 2 + (bym - py) ** 2 <= radius_bins**2
    rolled = np.roll(spectrum.samples * window, shift=(-py, -px), axis=(0, 1))
    spatial = np.fft.ifft2(np.fft.ifftshift(rolled))
    frac_x = order_map.predicted_plus_one[0] - px
    frac_y = order_map.predicted_plus_one[1] - py
    m = np.arange(grid.nx)
    n = np.arange(grid.ny)
    ramp = np.exp(
        -2j * np.pi * (frac_x * m[None, :] / grid.nx + frac_y * n[:, None] / grid.ny)
    )
    baseband = np.conj(spatial * ramp)
    return center_spectrum(ComplexField(grid, np.fft.fft2(baseband)))
