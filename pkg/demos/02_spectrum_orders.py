"""Order structure of the combined hologram spectrum.

The stepped reference places conjugate copies of the object spectrum at
+/- the carrier bin (about -13.33 bins per axis here) while the
combined-port subtraction cancels the zero-order lump at DC.  The demo
locates the retained order, windows it, and shows the demodulated
baseband spectrum sitting at DC.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.patches as mpatches
import matplotlib.pyplot as plt
import numpy as np

from mwholo import (
    PropagationParams,
    ReferenceWaveSpec,
    combine_ports,
    default_window_radius,
    extract_plus_one,
    hologram_spectrum,
    locate_orders,
    record,
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
radius = default_window_radius(order_map, scene.grid)
baseband = extract_plus_one(spectrum, order_map, radius)

print(f"predicted +1 order: ({order_map.predicted_plus_one[0]:.2f},"
      f" {order_map.predicted_plus_one[1]:.2f}) bins")
print(f"located   +1 order: {order_map.plus_one_index}")
print(f"window radius:      {radius} bins")

nx, ny = scene.grid.nx, scene.grid.ny
extent = (-nx // 2, nx // 2 - 1, -ny // 2, ny // 2 - 1)

fig, axes = plt.subplots(1, 2, figsize=(12, 5), constrained_layout=True)
log_mag = np.log10(np.abs(spectrum.samples) + 1e-6)
im = axes[0].imshow(log_mag, cmap="inferno", origin="lower", extent=extent)
axes[0].set_title("combined spectrum, log10 magnitude")
axes[0].set_xlabel("bin (x)")
axes[0].set_ylabel("bin (y)")
for index, color, label in (
    (order_map.plus_one_index, "cyan", "retained order"),
    (order_map.minus_one_index, "white", "conjugate order"),
):
    circle = mpatches.Circle(index, radius, fill=False, color=color, lw=1.5, label=label)
    axes[0].add_patch(circle)
axes[0].legend(loc="upper right", fontsize=8)
fig.colorbar(im, ax=axes[0], shrink=0.85)

im = axes[1].imshow(
    np.log10(np.abs(baseband.samples) + 1e-6), cmap="inferno", origin="lower", extent=extent
)
axes[1].set_title("extracted baseband spectrum (order moved to DC)")
axes[1].set_xlabel("bin (x)")
fig.colorbar(im, ax=axes[1], shrink=0.85)

fig.suptitle("Carrier orders and window extraction")
fig.savefig(OUT / "02_spectrum_orders.png", dpi=130)
print(f"wrote {OUT / '02_spectrum_orders.png'}")
