"""Indirect microwave holography: synthesize power-only holograms of
metallic scenes with a stepped-phase synthetic reference, recover the
complex field by Fourier order filtering and angular-spectrum
back-propagation, and score/enhance the reconstructed images.

Quick start::

    import mwholo as mh

    scene = mh.x_strips_scene()
    result = mh.run_pipeline(mh.PipelineConfig(out_dir="out"))
    print(result.quality_before.summary())
"""

from .enhancement import (
    ENHANCER_KINDS,
    Enhancer,
    block_average,
    enhance,
    structural_fidelity_check,
    upscale_bicubic,
)
from .fields import (
    ComplexField,
    RealField,
    ScanGrid,
    SpectralGrid,
    center_spectrum,
    dft2,
    total_power,
    uncenter_spectrum,
)
from .gridfile import GridFileError, export_grayscale, read_grid, write_grid
from .holograms import (
    PORTS,
    Hologram,
    HologramMeta,
    add_noise,
    combine_ports,
    record,
    subtract_background,
)
from .metrics import (
    QualityReport,
    mask_energy_fraction,
    quality_report,
    snr,
    speckle_index,
    speckle_ratio_map,
    ssim,
)
from .orders import (
    OrderMap,
    default_window_radius,
    extract_plus_one,
    hologram_spectrum,
    locate_orders,
    predicted_plus_one,
)
from .pipeline import (
    PORT_STRATEGIES,
    PipelineConfig,
    PipelineError,
    PipelineResult,
    run_pipeline,
)
from .propagation import (
    C_MM_PER_NS,
    PROPAGATION_MODES,
    AntennaGeometry,
    PropagationParams,
    antenna_separation,
    asm_propagate,
    propagation_kernel,
    wavenumber,
)
from .reconstruction import (
    ReconstructionResult,
    amplitude_image,
    backpropagate,
    reconstruct,
    wrapped_phase,
)
from .reference import OffsetReport, ReferenceWaveSpec, synthesize_reference, validate_offset
from .scenes import (
    SceneSpec,
    load_scene,
    parse_scene,
    point_scene,
    rect_mask,
    scene_mask,
    simulate_scattered_field,
    x_strips_scene,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # fields
    "ScanGrid", "ComplexField", "RealField", "SpectralGrid",
    "dft2", "center_spectrum", "uncenter_spectrum", "total_power",
    # propagation
    "C_MM_PER_NS", "PROPAGATION_MODES", "wavenumber", "PropagationParams",
    "AntennaGeometry", "antenna_separation", "asm_propagate", "propagation_kernel",
    # scenes
    "SceneSpec", "rect_mask", "x_strips_scene", "point_scene", "load_scene",
    "parse_scene", "scene_mask", "simulate_scattered_field",
    # reference
    "ReferenceWaveSpec", "OffsetReport", "synthesize_reference", "validate_offset",
    # holograms
    "PORTS", "Hologram", "HologramMeta", "record", "combine_ports",
    "subtract_background", "add_noise",
    # orders
    "OrderMap", "hologram_spectrum", "predicted_plus_one", "locate_orders",
    "default_window_radius", "extract_plus_one",
    # reconstruction
    "ReconstructionResult", "backpropagate", "amplitude_image", "wrapped_phase",
    "reconstruct",
    # metrics
    "QualityReport", "speckle_ratio_map", "speckle_index", "snr", "ssim",
    "quality_report", "mask_energy_fraction",
    # enhancement
    "ENHANCER_KINDS", "Enhancer", "upscale_bicubic", "enhance", "block_average",
    "structural_fidelity_check",
    # grid files
    "GridFileError", "write_grid", "read_grid", "export_grayscale",
    # pipeline
    "PORT_STRATEGIES", "PipelineConfig", "PipelineError", "PipelineResult",
    "run_pipeline",
]
