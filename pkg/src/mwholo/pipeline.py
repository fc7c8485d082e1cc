"""End-to-end pipeline: scene -> hologram -> spectrum -> reconstruction ->
metrics -> enhancement, with every artifact written to an output
directory and every numeric decision recorded in the report.

The pipeline is deterministic for a fixed config: noise draws are seeded
(sum port uses noise_seed, the second recording noise_seed + 1 so the
two are independent but reproducible), grid files carry no timestamps,
and rerunning into a fresh directory produces byte-identical files.
Propagation is monostatic (round trip), matching the collocated
transmit/receive scan geometry.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field

import numpy as np

from .enhancement import Enhancer, enhance, structural_fidelity_check
from .fields import ComplexField, RealField, ScanGrid
from .gridfile import export_grayscale, write_grid
from .holograms import HologramMeta, add_noise, combine_ports, record, subtract_background
from .metrics import QualityReport, mask_energy_fraction, quality_report
from .orders import (
    OrderMap,
    default_window_radius,
    extract_plus_one,
    hologram_spectrum,
    locate_orders,
)
from .propagation import PropagationParams
from .reconstruction import ReconstructionResult, reconstruct
from .reference import OffsetReport, ReferenceWaveSpec, synthesize_reference, validate_offset
from .scenes import SceneSpec, load_scene, scene_mask, simulate_scattered_field, x_strips_scene

__all__ = ["PORT_STRATEGIES", "PipelineConfig", "PipelineError", "PipelineResult", "run_pipeline"]

PORT_STRATEGIES = ("two-port", "single-port-background")

METRICS_WINDOW = 7


class PipelineError(RuntimeError):
    """A stage contract violation; carries the stage name and the cause."""

    def __init__(self, stage: str, cause: str):
        super().__init__(f"pipeline stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class PipelineConfig:
    """Everything one run needs.  Defaults reproduce the reference setup:
    9.1 GHz, 40x40 grid at 5 mm spacing, 2*pi/3 phase step, unit
    reference amplitude, scene 25 mm deep, two-port recording, automatic
    filter radius, residual-sharpen enhancement, no noise."""

    frequency: float = 9.1
    nx: int = 40
    ny: int = 40
    dx: float = 5.0
    dy: float = 5.0
    z0: float = 25.0
    phase_step: float = 2.0 * np.pi / 3.0
    e0: float = 1.0
    port_strategy: str = "two-port"
    radius_bins: int | str = "auto"
    enhancer: Enhancer = field(default_factory=Enhancer)
    noise_snr_db: float | None = None
    noise_seed: int = 0
    scene_path: str | None = None
    out_dir: str = "out"

    def __post_init__(self) -> None:
        ScanGrid(self.nx, self.ny, self.dx, self.dy)  # range checks
        if self.port_strategy not in PORT_STRATEGIES:
            raise ValueError(
                f"port strategy must be one of {PORT_STRATEGIES}, got {self.port_strategy!r}"
            )
        if isinstance(self.radius_bins, str):
            if self.radius_bins != "auto":
                raise ValueError(f"radius_bins must be an integer or 'auto', got {self.radius_bins!r}")
        elif not isinstance(self.radius_bins, (int, np.integer)) or self.radius_bins < 1:
            raise ValueError(f"radius_bins must be a positive integer or 'auto', got {self.radius_bins!r}")
        if not isinstance(self.enhancer, Enhancer):
            raise TypeError("enhancer must be an Enhancer")
        if self.scene_path is not None and not os.path.isfile(self.scene_path):
            raise ValueError(f"scene file not found: {self.scene_path}")

    @property
    def grid(self) -> ScanGrid:
        return ScanGrid(self.nx, self.ny, self.dx, self.dy)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["enhancer"] = asdict(self.enhancer)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(data)
        if "enhancer" in kwargs and not isinstance(kwargs["enhancer"], Enhancer):
            kwargs["enhancer"] = Enhancer(**kwargs["enhancer"])
        return cls(**kwargs)


@dataclass
class PipelineResult:
    """Return value of run_pipeline: the report and handles to everything
    the run produced (artifact paths are relative to out_dir)."""

    config: PipelineConfig
    validity: OffsetReport
    order_map: OrderMap
    radius_bins: int
    reconstruction: ReconstructionResult
    enhanced: RealField
    quality_before: QualityReport | None
    quality_after: QualityReport | None
    fidelity: float
    mask_energy: float | None
    warnings: list[str]
    artifacts: dict[str, str]
    records: list[dict]
    report_text: str


def _write_artifacts(out_dir: str, items: dict[str, tuple]) -> dict[str, str]:
    paths: dict[str, str] = {}
    for name, (fld, png_mapping) in items.items():
        grid_name = f"{name}.grid"
        write_grid(os.path.join(out_dir, grid_name), fld)
        paths[name] = grid_name
        if png_mapping is not None:
            png_name = f"{name}.png"
            export_grayscale(os.path.join(out_dir, png_name), fld, mapping=png_mapping)
            paths[f"{name}_png"] = png_name
    return paths


def _report_text(records: list[dict]) -> str:
    lines = ["pipeline report", "==============="]
    for rec in records:
        kind = rec["record"]
        body = {k: v for k, v in rec.items() if k != "record"}
        pretty = ", ".join(f"{k}={v}" for k, v in body.items())
        lines.append(f"[{kind}] {pretty}")
    return "\n".join(lines) + "\n"


def run_pipeline(config: PipelineConfig) -> PipelineResult:
    """Run the whole chain and write artifacts into config.out_dir.

    Writes hologram_combined, spectrum_magnitude, amplitude, phase and
    enhanced_amplitude grid files with grayscale previews, plus
    report.txt (human readable) and report.jsonl (one record per line).
    Any stage failure raises PipelineError naming the stage.
    """
    warnings: list[str] = []
    records: list[dict] = []
    stage = "config"
    try:
        grid = config.grid
        params = PropagationParams(config.frequency, "monostatic")
        ref_spec = ReferenceWaveSpec(config.e0, config.phase_step, grid)
        os.makedirs(config.out_dir, exist_ok=True)
        records.append({"record": "config", **config.to_dict()})

        stage = "scene"
        if config.scene_path is None:
            scene = x_strips_scene(grid, z0=config.z0)
        else:
            scene = load_scene(config.scene_path, default_z0=config.z0)
            if scene.grid != grid:
                raise ValueError(
                    f"scene grid {scene.grid} does not match configured grid {grid}"
                )
            if scene.z0 != config.z0:
                warnings.append(
                    f"scene file z0 = {scene.z0} overridden by configured z0 = {config.z0}"
                )
                scene = SceneSpec(scene.grid, scene.reflectivity, config.z0)
        empty_scene = not scene.reflectivity.any()
        if empty_scene:
            warnings.append("no object energy in the scene; images will be empty")

        stage = "offset-validation"
        validity = validate_offset(ref_spec, params.k)
        records.append(
            {
                "record": "offset_validation",
                "passed": validity.passed,
                "kr_x": validity.kr_x,
                "kr_y": validity.kr_y,
                "two_k": validity.two_k,
                "nyquist_x": validity.nyquist_x,
                "nyquist_y": validity.nyquist_y,
                "lambda_over_6": validity.lambda_over_6,
            }
        )
        if not validity.passed:
            raise ValueError(validity.summary())

        stage = "simulate"
        scattered = simulate_scattered_field(scene, params)

        stage = "record"
        reference = synthesize_reference(ref_spec)
        meta = HologramMeta(config.frequency, config.z0, ref_spec)
        h_sum = record(scattered, reference, "sum", meta)
        if config.port_strategy == "two-port":
            second = record(scattered, reference, "difference", meta)
        else:
            zero = ComplexField(grid, np.zeros(grid.shape, dtype=np.complex128))
            second = record(zero, reference, "sum", meta)

        stage = "noise"
        if config.noise_snr_db is not None:
            h_sum = add_noise(h_sum, config.noise_snr_db, config.noise_seed)
            second = add_noise(second, config.noise_snr_db, config.noise_seed + 1)
            records.append(
                {
                    "record": "noise",
                    "snr_db": config.noise_snr_db,
                    "seed_first": config.noise_seed,
                    "seed_second": config.noise_seed + 1,
                }
            )

        stage = "combine"
        if config.port_strategy == "two-port":
            combined = combine_ports(h_sum, second)
        else:
            combined = subtract_background(h_sum, second)

        stage = "spectrum"
        spectrum = hologram_spectrum(combined)
        spectrum_magnitude = RealField(grid, np.abs(spectrum.samples))

        stage = "locate-orders"
        order_map = locate_orders(spectrum, ref_spec)
        records.append(
            {
                "record": "order_map",
                "predicted_plus_one": list(order_map.predicted_plus_one),
                "plus_one_index": list(order_map.plus_one_index),
                "minus_one_index": list(order_map.minus_one_index),
                "dc_index": list(order_map.dc_index),
            }
        )

        stage = "extract"
        if config.radius_bins == "auto":
            radius = default_window_radius(order_map, grid)
        else:
            radius = int(config.radius_bins)
        frac_x = order_map.predicted_plus_one[0] - order_map.plus_one_index[0]
        frac_y = order_map.predicted_plus_one[1] - order_map.plus_one_index[1]
        records.append(
            {
                "record": "filter",
                "radius_bins": radius,
                "radius_source": "auto" if config.radius_bins == "auto" else "config",
                "integer_shift": list(order_map.plus_one_index),
                "residual_carrier_bins": [frac_x, frac_y],
                "conjugated": True,
            }
        )
        baseband = extract_plus_one(spectrum, order_map, radius)

        stage = "backpropagate"
        recon = reconstruct(baseband, config.z0, params)

        stage = "metrics"
        quality_before: QualityReport | None = None
        mask_energy: float | None = None
        if empty_scene:
            records.append({"record": "warning", "message": warnings[-1]})
        else:
            quality_before = quality_report(recon.amplitude, window=METRICS_WINDOW)
            mask_energy = mask_energy_fraction(recon.amplitude, scene_mask(scene), dilate=1)
            records.append(
                {
                    "record": "quality",
                    "image": "amplitude",
                    "speckle_index": quality_before.speckle_index,
                    "snr": quality_before.snr,
                    "snr_unbounded": quality_before.snr_unbounded,
                    "window": quality_before.window,
                    "excluded_pixels": quality_before.excluded_pixels,
                }
            )
            records.append(
                {"record": "mask_energy", "fraction_in_dilated_mask": mask_energy, "dilate": 1}
            )

        stage = "enhance"
        enhanced = enhance(recon.amplitude, config.enhancer)
        records.append(
            {
                "record": "enhance",
                "kind": config.enhancer.kind,
                "scale_factor": config.enhancer.scale_factor,
                "residual_gain": config.enhancer.residual_gain,
            }
        )
        quality_after: QualityReport | None = None
        if not empty_scene:
            quality_after = quality_report(enhanced, window=METRICS_WINDOW)
            records.append(
                {
                    "record": "quality",
                    "image": "enhanced_amplitude",
                    "speckle_index": quality_after.speckle_index,
                    "snr": quality_after.snr,
                    "snr_unbounded": quality_after.snr_unbounded,
                    "window": quality_after.window,
                    "excluded_pixels": quality_after.excluded_pixels,
                }
            )
        fidelity = structural_fidelity_check(recon.amplitude, enhanced, window=METRICS_WINDOW)
        records.append({"record": "fidelity", "ssim_after_block_average": fidelity})

        stage = "write-artifacts"
        artifacts = _write_artifacts(
            config.out_dir,
            {
                "hologram_combined": (combined.data, "minmax"),
                "spectrum_magnitude": (spectrum_magnitude, "minmax"),
                "amplitude": (recon.amplitude, "minmax"),
                "phase": (recon.phase, "phase"),
                "enhanced_amplitude": (enhanced, "minmax"),
            },
        )
        for name, rel in artifacts.items():
            records.append({"record": "artifact", "name": name, "path": rel})
        for message in warnings:
            records.append({"record": "warning", "message": message})

        stage = "report"
        report_text = _report_text(records)
        with open(os.path.join(config.out_dir, "report.txt"), "w", encoding="utf-8") as fh:
            fh.write(report_text)
        with open(os.path.join(config.out_dir, "report.jsonl"), "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        artifacts["report"] = "report.txt"
        artifacts["report_jsonl"] = "report.jsonl"
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError(stage, str(exc)) from exc

    return PipelineResult(
        config=config,
        validity=validity,
        order_map=order_map,
        radius_bins=radius,
        reconstruction=recon,
        enhanced=enhanced,
        quality_before=quality_before,
        quality_after=quality_after,
        fidelity=fidelity,
        mask_energy=mask_energy,
        warnings=warnings,
        artifacts=artifacts,
        records=records,
        report_text=report_text,
    )
