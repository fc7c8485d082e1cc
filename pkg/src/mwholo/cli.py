"""Command-line interface.

Subcommands mirror the pipeline stages so each step can also be run
standalone against grid files on disk::

    mwholo simulate    scene text -> complex field grid at the scan plane
    mwholo record      complex field grid -> hologram grid (one port or combined)
    mwholo spectrum    hologram grid -> centered spectrum magnitude (+ order map)
    mwholo reconstruct hologram grid -> amplitude/phase grids at the scene plane
    mwholo metrics     grid -> speckle index / window SNR (+ SSIM vs a reference)
    mwholo enhance     amplitude grid -> upscaled/sharpened grid
    mwholo pipeline    full chain into an output directory

For `pipeline`, flags mirror the config fields and a JSON config file
(--config) overrides flags: precedence is defaults, then flags, then the
config file, last one wins.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from .enhancement import Enhancer, enhance, structural_fidelity_check
from .fields import ComplexField, RealField
from .gridfile import export_grayscale, read_grid, write_grid
from .holograms import Hologram, HologramMeta, add_noise, combine_ports, record
from .metrics import quality_report
from .orders import default_window_radius, extract_plus_one, hologram_spectrum, locate_orders
from .pipeline import PipelineConfig, run_pipeline
from .propagation import PropagationParams
from .reconstruction import reconstruct
from .reference import ReferenceWaveSpec, synthesize_reference, validate_offset
from .scenes import load_scene, simulate_scattered_field

__all__ = ["main"]


def _require_real(field, path: str) -> RealField:
    if not isinstance(field, RealField):
        raise ValueError(f"{path} holds a complex grid where a real grid is needed")
    return field


def _require_complex(field, path: str) -> ComplexField:
    if not isinstance(field, ComplexField):
        raise ValueError(f"{path} holds a real grid where a complex grid is needed")
    return field


def _cmd_simulate(args: argparse.Namespace) -> int:
    scene = load_scene(args.scene, default_z0=args.z0)
    params = PropagationParams(args.frequency, args.mode)
    scattered = simulate_scattered_field(scene, params)
    write_grid(args.out, scattered)
    print(
        f"simulated {scene.grid.nx}x{scene.grid.ny} field at z0 = {scene.z0} mm,"
        f" {args.frequency} GHz ({args.mode}) -> {args.out}"
    )
    return 0


def _reference_for(args: argparse.Namespace, grid) -> ReferenceWaveSpec:
    return ReferenceWaveSpec(args.e0, args.phase_step, grid)


def _cmd_record(args: argparse.Namespace) -> int:
    scattered = _require_complex(read_grid(args.field), args.field)
    ref_spec = _reference_for(args, scattered.grid)
    params = PropagationParams(args.frequency, "monostatic")
    report = validate_offset(ref_spec, params.k)
    if not report.passed:
        raise ValueError(report.summary())
    reference = synthesize_reference(ref_spec)
    meta = HologramMeta(args.frequency, args.z0, ref_spec)
    if args.port == "combined":
        h_sum = record(scattered, reference, "sum", meta)
        h_diff = record(scattered, reference, "difference", meta)
        if args.noise_snr_db is not None:
            h_sum = add_noise(h_sum, args.noise_snr_db, args.noise_seed)
            h_diff = add_noise(h_diff, args.noise_snr_db, args.noise_seed + 1)
        holo = combine_ports(h_sum, h_diff)
    else:
        holo = record(scattered, reference, args.port, meta)
        if args.noise_snr_db is not None:
            holo = add_noise(holo, args.noise_snr_db, args.noise_seed)
    write_grid(args.out, holo.data)
    print(f"recorded {args.port} hologram -> {args.out}")
    return 0


def _cmd_spectrum(args: argparse.Namespace) -> int:
    data = _require_real(read_grid(args.hologram), args.hologram)
    holo = Hologram(data, args.port)
    spectrum = hologram_spectrum(holo)
    magnitude = RealField(data.grid, np.abs(spectrum.samples))
    write_grid(args.out, magnitude)
    lines = [f"spectrum magnitude -> {args.out}"]
    if args.image:
        export_grayscale(args.image, magnitude, mapping="minmax")
        lines.append(f"preview -> {args.image}")
    if args.phase_step is not None:
        ref_spec = ReferenceWaveSpec(args.e0, args.phase_step, data.grid)
        order_map = locate_orders(spectrum, ref_spec)
        lines.append(
            f"predicted plus-one bin: ({order_map.predicted_plus_one[0]:.2f},"
            f" {order_map.predicted_plus_one[1]:.2f})"
        )
        lines.append(f"located plus-one bin:  {order_map.plus_one_index}")
        lines.append(f"conjugate order bin:   {order_map.minus_one_index}")
    print("\n".join(lines))
    return 0


def _cmd_reconstruct(args: argparse.Namespace) -> int:
    import os

    data = _require_real(read_grid(args.hologram), args.hologram)
    holo = Hologram(data, args.port)
    ref_spec = ReferenceWaveSpec(args.e0, args.phase_step, data.grid)
    params = PropagationParams(args.frequency, "monostatic")
    report = validate_offset(ref_spec, params.k)
    if not report.passed:
        raise ValueError(report.summary())
    spectrum = hologram_spectrum(holo)
    order_map = locate_orders(spectrum, ref_spec)
    if args.radius_bins == "auto":
        radius = default_window_radius(order_map, data.grid)
    else:
        radius = int(args.radius_bins)
    baseband = extract_plus_one(spectrum, order_map, radius)
    recon = reconstruct(baseband, args.z0, params)
    os.makedirs(args.out_dir, exist_ok=True)
    amp_path = os.path.join(args.out_dir, "amplitude.grid")
    phase_path = os.path.join(args.out_dir, "phase.grid")
    write_grid(amp_path, recon.amplitude)
    write_grid(phase_path, recon.phase)
    export_grayscale(os.path.join(args.out_dir, "amplitude.png"), recon.amplitude, "minmax")
    export_grayscale(os.path.join(args.out_dir, "phase.png"), recon.phase, "phase")
    print(
        f"located order {order_map.plus_one_index} (predicted"
        f" ({order_map.predicted_plus_one[0]:.2f}, {order_map.predicted_plus_one[1]:.2f})),"
        f" window radius {radius} bins\n"
        f"amplitude/phase -> {args.out_dir}"
    )
    return 0


def _cmd_metrics(args: argparse.Namespace) -> int:
    image = _require_real(read_grid(args.image), args.image)
    reference = None
    if args.reference:
        reference = _require_real(read_grid(args.reference), args.reference)
        if reference.grid.shape != image.grid.shape:
            raise ValueError(
                f"reference shape {reference.grid.shape} does not match image"
                f" {image.grid.shape}"
            )
    report = quality_report(
        image, window=args.window, reference=reference, dynamic_range=args.dynamic_range
    )
    print(report.summary())
    return 0


def _cmd_enhance(args: argparse.Namespace) -> int:
    image = _require_real(read_grid(args.image), args.image)
    enhancer = Enhancer(
        kind=args.kind,
        scale_factor=args.scale_factor,
        residual_gain=args.residual_gain,
        residual_path=args.residual_path,
    )
    out = enhance(image, enhancer)
    write_grid(args.out, out)
    lines = [
        f"enhanced ({enhancer.kind}, x{enhancer.scale_factor}) -> {args.out}",
        f"structural fidelity vs input: {structural_fidelity_check(image, out):.4f}",
    ]
    if args.png:
        export_grayscale(args.png, out, mapping="minmax")
        lines.append(f"preview -> {args.png}")
    print("\n".join(lines))
    return 0


_PIPELINE_SCALARS = {
    # flag dest -> (config key, converter)
    "frequency": ("frequency", float),
    "nx": ("nx", int),
    "ny": ("ny", int),
    "dx": ("dx", float),
    "dy": ("dy", float),
    "z0": ("z0", float),
    "phase_step": ("phase_step", float),
    "e0": ("e0", float),
    "port_strategy": ("port_strategy", str),
    "noise_snr_db": ("noise_snr_db", float),
    "noise_seed": ("noise_seed", int),
    "scene": ("scene_path", str),
    "out_dir": ("out_dir", str),
}


def _radius_bins_value(text: str) -> int | str:
    if text == "auto":
        return "auto"
    return int(text)


def _cmd_pipeline(args: argparse.Namespace) -> int:
    settings: dict = {}
    for dest, (key, convert) in _PIPELINE_SCALARS.items():
        value = getattr(args, dest)
        if value is not None:
            settings[key] = convert(value)
    if args.radius_bins is not None:
        settings["radius_bins"] = _radius_bins_value(args.radius_bins)
    enhancer_flags = {
        "kind": args.enhancer_kind,
        "scale_factor": args.scale_factor,
        "residual_gain": args.residual_gain,
        "residual_path": args.residual_path,
    }
    enhancer_flags = {k: v for k, v in enhancer_flags.items() if v is not None}
    if enhancer_flags:
        settings["enhancer"] = {**asdict(Enhancer()), **enhancer_flags}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            file_settings = json.load(fh)
        settings.update(file_settings)  # config file wins over flags
    config = PipelineConfig.from_dict(settings)
    result = run_pipeline(config)
    print(result.report_text, end="")
    print(f"artifacts written to {config.out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwholo",
        description="Indirect microwave holography: simulate, record, reconstruct, score.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="propagate a scene to the scan plane")
    p.add_argument("--scene", required=True, help="scene text file")
    p.add_argument("--z0", type=float, default=None, help="scene depth in mm (overrides the file)")
    p.add_argument("--frequency", type=float, default=9.1, help="GHz (default 9.1)")
    p.add_argument("--mode", choices=("monostatic", "one-way"), default="monostatic")
    p.add_argument("--out", required=True, help="output complex grid file")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("record", help="record a hologram from a simulated field")
    p.add_argument("--field", required=True, help="complex grid file from simulate")
    p.add_argument("--port", choices=("sum", "difference", "combined"), default="combined")
    p.add_argument("--e0", type=float, default=1.0, help="reference amplitude (default 1)")
    p.add_argument(
        "--phase-step", type=float, default=2.0 * np.pi / 3.0,
        help="reference phase step per sample in rad (default 2*pi/3)",
    )
    p.add_argument("--frequency", type=float, default=9.1)
    p.add_argument("--z0", type=float, default=25.0)
    p.add_argument("--noise-snr-db", type=float, default=None)
    p.add_argument("--noise-seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output real grid file")
    p.set_defaults(func=_cmd_record)

    p = sub.add_parser("spectrum", help="centered spectrum magnitude of a hologram")
    p.add_argument("--hologram", required=True, help="real grid file")
    p.add_argument("--port", choices=("sum", "difference", "combined"), default="combined")
    p.add_argument("--out", required=True, help="output real grid file (|spectrum|)")
    p.add_argument("--image", default=None, help="optional PNG preview path")
    p.add_argument(
        "--phase-step", type=float, default=None,
        help="also locate the orders for this reference phase step (rad)",
    )
    p.add_argument("--e0", type=float, default=1.0)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("reconstruct", help="amplitude/phase at the scene plane")
    p.add_argument("--hologram", required=True, help="real grid file")
    p.add_argument("--port", choices=("sum", "difference", "combined"), default="combined")
    p.add_argument("--phase-step", type=float, default=2.0 * np.pi / 3.0)
    p.add_argument("--e0", type=float, default=1.0)
    p.add_argument("--frequency", type=float, default=9.1)
    p.add_argument("--z0", type=float, default=25.0)
    p.add_argument("--radius-bins", default="auto", help="filter radius in bins, or 'auto'")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("metrics", help="speckle index / window SNR / SSIM")
    p.add_argument("--image", required=True, help="real grid file to score")
    p.add_argument("--reference", default=None, help="optional same-shape reference grid")
    p.add_argument("--window", type=int, default=7)
    p.add_argument("--dynamic-range", type=float, default=None)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("enhance", help="upscale and sharpen an amplitude grid")
    p.add_argument("--image", required=True, help="real grid file")
    p.add_argument("--kind", choices=("bicubic", "residual-sharpen", "external"),
                   default="residual-sharpen")
    p.add_argument("--scale-factor", type=int, default=4)
    p.add_argument("--residual-gain", type=float, default=1.0)
    p.add_argument("--residual-path", default=None, help="residual grid for kind=external")
    p.add_argument("--out", required=True)
    p.add_argument("--png", default=None, help="optional PNG preview path")
    p.set_defaults(func=_cmd_enhance)

    p = sub.add_parser("pipeline", help="run the full chain into a directory")
    p.add_argument("--config", default=None, help="JSON config; overrides flags")
    p.add_argument("--frequency", type=float, default=None)
    p.add_argument("--nx", type=int, default=None)
    p.add_argument("--ny", type=int, default=None)
    p.add_argument("--dx", type=float, default=None)
    p.add_argument("--dy", type=float, default=None)
    p.add_argument("--z0", type=float, default=None)
    p.add_argument("--phase-step", type=float, default=None)
    p.add_argument("--e0", type=float, default=None)
    p.add_argument("--port-strategy", choices=("two-port", "single-port-background"), default=None)
    p.add_argument("--radius-bins", default=None, help="filter radius in bins, or 'auto'")
    p.add_argument("--enhancer-kind", choices=("bicubic", "residual-sharpen", "external"),
                   default=None)
    p.add_argument("--scale-factor", type=int, default=None)
    p.add_argument("--residual-gain", type=float, default=None)
    p.add_argument("--residual-path", default=None)
    p.add_argument("--noise-snr-db", type=float, default=None)
    p.add_argument("--noise-seed", type=int, default=None)
    p.add_argument("--scene", default=None, help="scene text file (default: built-in X strips)")
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=_cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # surface a clean one-line error, nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
