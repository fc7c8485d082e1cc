"""Back-propagation to the scene plane, and a through-focus sweep.

After order extraction the baseband spectrum is an estimate of the
scattered field's spectrum at the scan plane.  Back-propagating by the
standoff distance focuses the target: the X shows up sharply at the true
depth (25 mm) and defocuses away from it.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from mwholo import (
    PropagationParams,
    ReferenceWaveSpec,
    backpropagate,
    combine_ports,
    default_window_radius,
    extract_plus_one,
    hologram_spectrum,
    locate_orders,
    mask_energy_fraction,
    reconstruct,
    record,
    scene_mask,
    simulate_scattered_field,
    synthesize_reference,
    x_strips_scene,
)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

scene = x_strips_scene()
params = PropagationParams(9.1)
ref_spec = ReferenceWaveSpec(1.0, 2 * np.pi / 3, scene.grid)

scattered = simulate_scattered_field(scene, params)
reference = synthesize_reference(ref_spec)
combined = combine_ports(
    record(scattered, reference, "sum"), record(scattered, reference, "difference")
)
spectrum = hologram_spectrum(combined)
order_map = locate_orders(spectrum, ref_spec)
baseband = extract_plus_one(spectrum, order_map, default_window_radius(order_map, scene.grid))

recon = reconstruct(baseband, scene.z0, params)
fraction = mask_energy_fraction(recon.amplitude, scene_mask(scene), dilate=1)
print(f"energy inside 1-px dilated scene mask at z0 = {scene.z0} mm: {fraction * 100:.1f}%")

fig, axes = plt.subplots(1, 3, figsize=(14, 4.4), constrained_layout=True)
axes[0].imshow(scene_mask(scene), cmap="gray", origin="lower")
axes[0].set_title("scene mask")
im = axes[1].imshow(recon.amplitude.samples, cmap="viridis", origin="lower")
axes[1].set_title("reconstructed amplitude")
fig.colorbar(im, ax=axes[1], shrink=0.85)
im = axes[2].imshow(recon.phase.samples, cmap="twilight", origin="lower",
                    vmin=-np.pi, vmax=np.pi)
axes[2].set_title("wrapped phase (rad)")
fig.colorbar(im, ax=axes[2], shrink=0.85)
fig.suptitle("Reconstruction at the true depth")
fig.savefig(OUT / "03_reconstruction.png", dpi=130)
print(f"wrote {OUT / '03_reconstruction.png'}")

# Through-focus sweep: refocus the same baseband at a range of depths.
depths = [5.0, 15.0, 25.0, 35.0, 50.0]
fig, axes = plt.subplots(1, len(depths), figsize=(3.0 * len(depths), 3.4),
                         constrained_layout=True)
for ax, z in zip(axes, depths):
    field = backpropagate(baseband, z, params)
    ax.imshow(np.abs(field.samples), cmap="viridis", origin="lower")
    marker = " (true z0)" if z == scene.z0 else ""
    ax.set_title(f"z = {z:.0f} mm{marker}", fontsize=10)
    ax.set_xticks([])
    ax.set_yticks([])
fig.suptitle("Through-focus sweep of the same hologram")
fig.savefig(OUT / "03_through_focus.png", dpi=130)
print(f"wrote {OUT / '03_through_focus.png'}")
