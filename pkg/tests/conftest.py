"""Shared fixtures and independent oracles.

The oracles here are deliberately naive (direct summation, python loops)
so they share no code path with the package: brute-force 2D DFT,
Rayleigh-Sommerfeld point summation, sliding-window statistics.
"""

from __future__ import annotations

import numpy as np
import pytest

from mwholo import ComplexField, ScanGrid


def brute_force_dft2(samples: np.ndarray, inverse: bool = False) -> np.ndarray:
    """O(N^4) double-sum DFT with the package convention: unscaled
    forward, 1/(nx*ny) inverse."""
    ny, nx = samples.shape
    sign = 1j if inverse else -1j
    out = np.zeros((ny, nx), dtype=np.complex128)
    for q in range(ny):
        for p in range(nx):
            acc = 0.0 + 0.0j
            for n in range(ny):
                for m in range(nx):
                    acc += samples[n, m] * np.exp(sign * 2 * np.pi * (p * m / nx + q * n / ny))
            out[q, p] = acc
    if inverse:
        out /= nx * ny
    return out


def rayleigh_sommerfeld_point(
    grid: ScanGrid, k: float, z: float, src_ix: int, src_iy: int
) -> np.ndarray:
    """Field at distance z from a unit point source at a grid pixel, by the
    first Rayleigh-Sommerfeld diffraction formula with the package's
    exp(-1j*k*r) sign convention, direct summation over the destination
    grid (the source is a single dx*dy cell)."""
    xs = grid.x_coords()
    ys = grid.y_coords()
    x0 = xs[src_ix]
    y0 = ys[src_iy]
    out = np.zeros(grid.shape, dtype=np.complex128)
    cell = grid.dx * grid.dy
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            r = np.sqrt((x - x0) ** 2 + (y - y0) ** 2 + z * z)
            out[iy, ix] = (z / (2 * np.pi * r * r)) * (1.0 / r + 1j * k) * np.exp(-1j * k * r) * cell
    return out


def sliding_speckle_oracle(img: np.ndarray, window: int) -> tuple[float, int]:
    """Python-loop mean sigma/mu over symmetric-padded sliding windows,
    skipping windows with nonpositive mean.  Returns (index, excluded)."""
    half = window // 2
    padded = np.pad(img, half, mode="symmetric")
    ratios = []
    excluded = 0
    for iy in range(img.shape[0]):
        for ix in range(img.shape[1]):
            tile = padded[iy : iy + window, ix : ix + window]
            mu = tile.mean()
            if mu <= 0:
                excluded += 1
                continue
            ratios.append(tile.std() / mu)
    if not ratios:
        raise ValueError("no valid windows")
    return float(np.mean(ratios)), excluded


def complex_correlation(a: np.ndarray, b: np.ndarray) -> float:
    """|<a, b>| / (|a| |b|): 1.0 iff a and b agree up to a complex scale."""
    num = np.abs(np.vdot(a, b))
    den = np.linalg.norm(a) * np.linalg.norm(b)
    return float(num / den)


def band_limited_field(grid: ScanGrid, bandwidth: int, seed: int) -> ComplexField:
    """Random complex field whose centered spectrum is confined to a
    (2*bandwidth+1)^2 square around DC."""
    rng = np.random.default_rng(seed)
    spec = np.zeros(grid.shape, dtype=np.complex128)
    cy, cx = grid.ny // 2, grid.nx // 2
    block = rng.normal(size=(2 * bandwidth + 1, 2 * bandwidth + 1)) + 1j * rng.normal(
        size=(2 * bandwidth + 1, 2 * bandwidth + 1)
    )
    spec[cy - bandwidth : cy + bandwidth + 1, cx - bandwidth : cx + bandwidth + 1] = block
    samples = np.fft.ifft2(np.fft.ifftshift(spec))
    return ComplexField(grid, samples)


@pytest.fixture
def paper_grid() -> ScanGrid:
    return ScanGrid(40, 40, 5.0, 5.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260816)
