"""Power-only hologram recording and port arithmetic.

A scalar power detector measures |O + R|^2 when the synthetic reference
is added and |O - R|^2 when it is subtracted; these are the sum and
difference ports.  Their difference cancels both squared-magnitude terms,

    |O + R|^2 - |O - R|^2 = 4 * Re(O * conj(R)),

leaving only the interference cross terms (the combined port), while
their sum obeys |O + R|^2 + |O - R|^2 = 2|O|^2 + 2|R|^2.  Subtracting a
reference-only background |R|^2 = E0^2 from a single port is the
fallback when only one port was recorded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import ComplexField, RealField
from .reference import ReferenceWaveSpec

__all__ = [
    "PORTS",
    "HologramMeta",
    "Hologram",
    "record",
    "combine_ports",
    "subtract_background",
    "add_noise",
]

PORTS = ("sum", "difference", "combined")


@dataclass(frozen=True)
class HologramMeta:
    """Acquisition context: frequency (GHz), scene depth z0 (mm), and the
    reference spec in force when the hologram was recorded."""

    frequency: float
    z0: float
    reference: ReferenceWaveSpec

    def __post_init__(self) -> None:
        if not self.frequency > 0:
            raise ValueError(f"frequency must be positive, got {self.frequency}")
        if not self.z0 > 0:
            raise ValueError(f"z0 must be positive, got {self.z0}")
        if not isinstance(self.reference, ReferenceWaveSpec):
            raise TypeError("meta.reference must be a ReferenceWaveSpec")


@dataclass(frozen=True)
class Hologram:
    """Real-valued detector readings from one port.

    sum/difference ports are power readings and must be nonnegative;
    the combined port is a signed difference of powers.
    """

    data: RealField
    port: str
    meta: HologramMeta | None = None

    def __post_init__(self) -> None:
        if self.port not in PORTS:
            raise ValueError(f"port must be one of {PORTS}, got {self.port!r}")
        if self.port in ("sum", "difference"):
            low = float(self.data.samples.min())
            if low < 0:
                raise ValueError(
                    f"{self.port} port is a power reading and must be nonnegative,"
                    f" found {low}"
                )

    @property
    def grid(self):
        return self.data.grid


def record(
    obj: ComplexField,
    reference: ComplexField,
    port: str,
    meta: HologramMeta | None = None,
) -> Hologram:
    """Detect |obj +/- reference|^2 on a common grid.

    port selects the sign: 'sum' measures |O + R|^2, 'difference'
    |O - R|^2.  The combined port is not recorded directly; build it with
    combine_ports.
    """
    if port not in ("sum", "difference"):
        raise ValueError(f"record takes port 'sum' or 'difference', got {port!r}")
    if obj.grid != reference.grid:
        raise ValueError(
            f"object grid {obj.grid} does not match reference grid {reference.grid}"
        )
    sign = 1.0 if port == "sum" else -1.0
    power = np.abs(obj.samples + sign * reference.samples) ** 2
    return Hologram(RealField(obj.grid, power), port, meta)


def _require_same_context(a: Hologram, b: Hologram, what: str) -> None:
    if a.grid != b.grid:
        raise ValueError(f"{what}: grids differ ({a.grid} vs {b.grid})")
    if a.meta != b.meta:
        raise ValueError(f"{what}: acquisition metadata differs")


def combine_ports(h_sum: Hologram, h_difference: Hologram) -> Hologram:
    """Combined hologram = sum port - difference port = 4*Re(O*conj(R))."""
    if h_sum.port != "sum" or h_difference.port != "difference":
        raise ValueError(
            f"combine_ports needs (sum, difference) ports, got"
            f" ({h_sum.port!r}, {h_difference.port!r})"
        )
    _require_same_context(h_sum, h_difference, "combine_ports")
    data = h_sum.data.samples - h_difference.data.samples
    return Hologram(RealField(h_sum.grid, data), "combined", h_sum.meta)


def subtract_background(holo: Hologram, background: Hologram) -> Hologram:
    """Remove a reference-only (or otherwise object-free) recording from a
    single port.  The result is signed, so it is typed as a combined-port
    hologram; for the sum port it equals |O|^2 + 2*Re(O*conj(R))."""
    if holo.port not in ("sum", "difference"):
        raise ValueError(f"background subtraction applies to a raw port, got {holo.port!r}")
    if background.port != holo.port:
        raise ValueError(
            f"background port {background.port!r} does not match hologram port {holo.port!r}"
        )
    _require_same_context(holo, background, "subtract_background")
    data = holo.data.samples - background.data.samples
    return Hologram(RealField(holo.grid, data), "combined", holo.meta)


def add_noise(holo: Hologram, snr_db: float, seed: int) -> Hologram:
    """Additive white Gaussian detector noise at a requested SNR.

    The noise standard deviation is set from the mean squared signal,
    sigma^2 = mean(h^2) / 10^(snr_db/10), drawn reproducibly from the
    seed.  snr_db = +inf is the documented no-op and returns the input
    hologram unchanged.  Power ports (sum/difference) are clipped at zero
    after the noise is added, since a power detector cannot read negative;
    the signed combined port is never clipped.
    """
    if math.isnan(snr_db):
        raise ValueError("snr_db must not be NaN")
    if math.isinf(snr_db):
        if snr_db > 0:
            return holo
        raise ValueError("snr_db = -inf is not meaningful")
    signal_power = float(np.mean(holo.data.samples**2))
    sigma = math.sqrt(signal_power / (10.0 ** (snr_db / 10.0)))
    rng = np.random.default_rng(seed)
    noisy = holo.data.samples + rng.normal(0.0, sigma, holo.data.samples.shape)
    if holo.port in ("sum", "difference"):
        noisy = np.maximum(noisy, 0.0)
    return Hologram(RealField(holo.grid, noisy), holo.port, holo.meta)
