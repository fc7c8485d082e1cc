"""Synthesized off-axis reference wave.

The reference is never a physical wave: it is a phase ramp injected
numerically, advancing by a fixed phase step per sample along both scan
axes, R[n, m] = E0 * exp(-1j * phase_step * (m + n)).  Dividing the step
by the sample spacing gives the carrier spatial frequency kr per axis.
Separating the +1 order from the DC terms requires kr >= 2k on each axis
(the DC halo of the object power spectrum is 2k wide in the monostatic
geometry), while staying representable requires kr <= pi/spacing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import ComplexField, ScanGrid

__all__ = ["ReferenceWaveSpec", "OffsetReport", "synthesize_reference", "validate_offset"]


@dataclass(frozen=True)
class ReferenceWaveSpec:
    """Amplitude, per-sample phase step (rad), and grid of the synthetic reference."""

    e0: float
    phase_step: float
    grid: ScanGrid

    def __post_init__(self) -> None:
        if not self.e0 > 0:
            raise ValueError(f"reference amplitude must be positive, got {self.e0}")
        if not 0 < self.phase_step < 2 * np.pi:
            raise ValueError(
                f"phase step must be in (0, 2*pi) rad per sample, got {self.phase_step}"
            )

    @property
    def kr_x(self) -> float:
        """Carrier spatial frequency along x, rad/mm."""
        return self.phase_step / self.grid.dx

    @property
    def kr_y(self) -> float:
        return self.phase_step / self.grid.dy


def synthesize_reference(spec: ReferenceWaveSpec) -> ComplexField:
    """Sample the reference ramp on the spec's grid."""
    m = np.arange(spec.grid.nx)
    n = np.arange(spec.grid.ny)
    phase = -spec.phase_step * (m[None, :] + n[:, None])
    return ComplexField(spec.grid, spec.e0 * np.exp(1j * phase))


@dataclass(frozen=True)
class OffsetReport:
    """Outcome of the carrier-offset check, with every number it rests on.

    passed is true iff 2k <= kr <= pi/spacing holds on both axes.  The
    lambda/6 spacing guideline value is carried along for reference but is
    advisory only; it does not affect passed.
    """

    passed: bool
    kr_x: float
    kr_y: float
    two_k: float
    nyquist_x: float
    nyquist_y: float
    separation_ok_x: bool
    separation_ok_y: bool
    representable_x: bool
    representable_y: bool
    dx: float
    dy: float
    wavelength: float

    @property
    def lambda_over_6(self) -> float:
        """Spacing suggested by the lambda/6 rule of thumb, mm."""
        return self.wavelength / 6.0

    def summary(self) -> str:
        lines = [
            f"carrier offset check: {'pass' if self.passed else 'FAIL'}",
            f"  kr_x = {self.kr_x:.5f} rad/mm, kr_y = {self.kr_y:.5f} rad/mm",
            f"  2k   = {self.two_k:.5f} rad/mm (required lower bound)",
            f"  pi/dx = {self.nyquist_x:.5f}, pi/dy = {self.nyquist_y:.5f} rad/mm (upper bounds)",
            f"  separation: x {'ok' if self.separation_ok_x else 'VIOLATED'},"
            f" y {'ok' if self.separation_ok_y else 'VIOLATED'}",
            f"  representable: x {'ok' if self.representable_x else 'VIOLATED'},"
            f" y {'ok' if self.representable_y else 'VIOLATED'}",
            f"  note: spacing dx = {self.dx:g} mm, dy = {self.dy:g} mm;"
            f" lambda/6 guideline = {self.lambda_over_6:.3f} mm (advisory)",
        ]
        return "\n".join(lines)


def validate_offset(spec: ReferenceWaveSpec, k: float) -> OffsetReport:
    """Check that the carrier both clears the DC halo (kr >= 2k, inclusive)
    and stays below the grid's representable limit (kr <= pi/spacing) on
    each axis.  k is the one-way wavenumber in rad/mm."""
    if not k > 0:
        raise ValueError(f"wavenumber must be positive, got {k}")
    two_k = 2.0 * k
    nyq_x = np.pi / spec.grid.dx
    nyq_y = np.pi / spec.grid.dy
    sep_x = spec.kr_x >= two_k
    sep_y = spec.kr_y >= two_k
    rep_x = spec.kr_x <= nyq_x
    rep_y = spec.kr_y <= nyq_y
    return OffsetReport(
        passed=bool(sep_x and sep_y and rep_x and rep_y),
        kr_x=spec.kr_x,
        kr_y=spec.kr_y,
        two_k=two_k,
        nyquist_x=nyq_x,
        nyquist_y=nyq_y,
        separation_ok_x=bool(sep_x),
        separation_ok_y=bool(sep_y),
        representable_x=bool(rep_x),
        representable_y=bool(rep_y),
        dx=spec.grid.dx,
        dy=spec.grid.dy,
        wavelength=2.0 * np.pi / k,
    )
