"""Back-propagation of the extracted baseband field to the scene plane,
and the derived amplitude and wrapped-phase images.

Backpropagation applies the conjugate transfer function
exp(+1j * z0 * kz) to the centered baseband spectrum, undoing the
forward travel; evanescent bins stay zeroed, so the reconstruction is
the band-limited object field at depth z0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import ComplexField, RealField
from .propagation import PropagationParams, propagation_kernel

__all__ = [
    "ReconstructionResult",
    "backpropagate",
    "amplitude_image",
    "wrapped_phase",
    "reconstruct",
]


def backpropagate(
    baseband_spectrum: ComplexField, z0: float, params: PropagationParams
) -> ComplexField:
    """Propagate a centered baseband spectrum back by z0 >= 0 mm and return
    the spatial field at the scene plane."""
    if not z0 >= 0:
        raise ValueError(f"backpropagation distance must be nonnegative, got {z0}")
    kernel = propagation_kernel(baseband_spectrum.grid, params.kappa, -z0)
    out = np.fft.ifft2(np.fft.ifftshift(baseband_spectrum.samples * kernel))
    return ComplexField(baseband_spectrum.grid, out)


def amplitude_image(field: ComplexField) -> RealField:
    """|field| samplewise; always nonnegative."""
    return RealField(field.grid, np.abs(field.samples))


def wrapped_phase(field: ComplexField) -> RealField:
    """Phase in (-pi, pi], with exactly-zero samples reported as phase 0.

    The open end of the interval is enforced by mapping -pi to +pi, so
    amplitude * exp(1j * phase) always rebuilds the field.
    """
    phase = np.angle(field.samples)
    phase = np.where(phase == -np.pi, np.pi, phase)
    phase = np.where(field.samples == 0, 0.0, phase)
    return RealField(field.grid, phase)


@dataclass(frozen=True)
class ReconstructionResult:
    """Complex reconstruction at the scene plane plus its image-domain views.

    Invariants held by construction: amplitude >= 0 everywhere, phase in
    (-pi, pi], and amplitude * exp(1j * phase) reproduces the field to
    rounding error.
    """

    field: ComplexField
    amplitude: RealField
    phase: RealField
    z0: float
    params: PropagationParams


def reconstruct(
    baseband_spectrum: ComplexField, z0: float, params: PropagationParams
) -> ReconstructionResult:
    """Backpropagate and package the amplitude/phase views."""
    field = backpropagate(baseband_spectrum, z0, params)
    return ReconstructionResult(
        field=field,
        amplitude=amplitude_image(field),
        phase=wrapped_phase(field),
        z0=z0,
        params=params,
    )
