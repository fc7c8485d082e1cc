"""Planar reflectivity scenes, their plain-text file format, and the
forward simulation of the field they scatter back to the scan plane.

Scene file format (whitespace separated, '#' comments, blank lines ok)::

    grid 40 40 5.0 5.0          # nx ny dx dy, required first directive
    z0 25.0                     # optional scene depth in mm
    rect 0 0 185 25 45          # cx cy width height angle_deg [re im]
    rect 0 0 185 25 -45 1 0
    pixel 12 7 0.5 -0.5         # ix iy re im, indices from the grid origin
    values                      # literal samples: nx*ny "re im" pairs,
    1 0 0 0 ...                 # row-major, x fastest; consumes the rest

`rect` stamps a rotated filled rectangle in aperture-centered mm
coordinates (rotation counterclockwise, degrees); the complex
reflectivity defaults to 1+0j.  Later directives overwrite earlier ones
where they overlap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import ComplexField, ScanGrid
from .propagation import PropagationParams, asm_propagate

__all__ = [
    "SceneSpec",
    "rect_mask",
    "x_strips_scene",
    "point_scene",
    "load_scene",
    "parse_scene",
    "scene_mask",
    "simulate_scattered_field",
]


@dataclass(frozen=True)
class SceneSpec:
    """A planar complex reflectivity map at depth z0 (mm) below the scan plane."""

    grid: ScanGrid
    reflectivity: np.ndarray
    z0: float

    def __post_init__(self) -> None:
        field = ComplexField(self.grid, self.reflectivity)  # validates shape/finiteness
        object.__setattr__(self, "reflectivity", field.samples)
        if not self.z0 > 0:
            raise ValueError(f"scene depth z0 must be positive, got {self.z0}")

    def as_field(self) -> ComplexField:
        return ComplexField(self.grid, self.reflectivity)


def rect_mask(
    grid: ScanGrid, cx: float, cy: float, width: float, height: float, angle_deg: float
) -> np.ndarray:
    """Boolean mask of pixels whose centers fall inside a rotated rectangle.

    Coordinates are aperture-centered mm; angle is counterclockwise
    degrees.  Boundary pixels (|u| == width/2 etc.) are included.
    """
    if not (width > 0 and height > 0):
        raise ValueError(f"rectangle sides must be positive, got {width}x{height}")
    xs, ys = np.meshgrid(grid.x_coords(), grid.y_coords())
    a = np.deg2rad(angle_deg)
    u = (xs - cx) * np.cos(a) + (ys - cy) * np.sin(a)
    v = -(xs - cx) * np.sin(a) + (ys - cy) * np.cos(a)
    return (np.abs(u) <= width / 2.0) & (np.abs(v) <= height / 2.0)


def x_strips_scene(
    grid: ScanGrid | None = None,
    z0: float = 25.0,
    length: float = 185.0,
    width: float = 25.0,
    angle: float = 45.0,
    reflectivity: complex = 1.0 + 0.0j,
) -> SceneSpec:
    """The reference test target: two crossed metal strips forming an X.

    Defaults give two 185 mm x 25 mm strips at +/-45 degrees centered in a
    40x40 grid with 5 mm spacing, 25 mm deep.
    """
    if grid is None:
        grid = ScanGrid(40, 40, 5.0, 5.0)
    mask = rect_mask(grid, 0.0, 0.0, length, width, angle) | rect_mask(
        grid, 0.0, 0.0, length, width, -angle
    )
    refl = np.where(mask, complex(reflectivity), 0.0 + 0.0j)
    return SceneSpec(grid, refl, z0)


def point_scene(
    grid: ScanGrid, z0: float, ix: int | None = None, iy: int | None = None,
    reflectivity: complex = 1.0 + 0.0j,
) -> SceneSpec:
    """Single nonzero pixel, defaulting to the grid center (nx//2, ny//2)."""
    ix = grid.nx // 2 if ix is None else ix
    iy = grid.ny // 2 if iy is None else iy
    refl = np.zeros(grid.shape, dtype=np.complex128)
    refl[iy, ix] = reflectivity
    return SceneSpec(grid, refl, z0)


def scene_mask(scene: SceneSpec) -> np.ndarray:
    """Boolean support of the scene: pixels with nonzero reflectivity."""
    return scene.reflectivity != 0


class SceneFormatError(ValueError):
    """Malformed scene text; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"scene line {line}: {message}")
        self.line = line


def parse_scene(text: str, default_z0: float | None = None) -> SceneSpec:
    """Parse scene text.  If the file has no z0 directive, default_z0 is
    used; with neither, parsing fails."""
    grid: ScanGrid | None = None
    z0 = default_z0
    refl: np.ndarray | None = None
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        lineno = i + 1
        tokens = lines[i].split("#", 1)[0].split()
        i += 1
        if not tokens:
            continue
        word, args = tokens[0], tokens[1:]
        if word == "grid":
            if grid is not None:
                raise SceneFormatError(lineno, "duplicate grid directive")
            if len(args) != 4:
                raise SceneFormatError(lineno, "grid needs: nx ny dx dy")
            try:
                grid = ScanGrid(int(args[0]), int(args[1]), float(args[2]), float(args[3]))
            except (TypeError, ValueError) as exc:
                raise SceneFormatError(lineno, str(exc)) from exc
            refl = np.zeros(grid.shape, dtype=np.complex128)
            continue
        if grid is None or refl is None:
            raise SceneFormatError(lineno, f"'{word}' before the grid directive")
        if word == "z0":
            if len(args) != 1:
                raise SceneFormatError(lineno, "z0 needs one value")
            z0 = float(args[0])
        elif word == "rect":
            if len(args) not in (5, 7):
                raise SceneFormatError(lineno, "rect needs: cx cy w h angle [re im]")
            cx, cy, w, h, ang = (float(a) for a in args[:5])
            value = complex(float(args[5]), float(args[6])) if len(args) == 7 else 1.0 + 0.0j
            try:
                mask = rect_mask(grid, cx, cy, w, h, ang)
            except ValueError as exc:
                raise SceneFormatError(lineno, str(exc)) from exc
            refl[mask] = value
        elif word == "pixel":
            if len(args) != 4:
                raise SceneFormatError(lineno, "pixel needs: ix iy re im")
            ix, iy = int(args[0]), int(args[1])
            if not (0 <= ix < grid.nx and 0 <= iy < grid.ny):
                raise SceneFormatError(lineno, f"pixel ({ix}, {iy}) outside {grid.nx}x{grid.ny}")
            refl[iy, ix] = complex(float(args[2]), float(args[3]))
        elif word == "values":
            flat = args + [t for line in lines[i:] for t in line.split("#", 1)[0].split()]
            i = len(lines)
            need = 2 * grid.nx * grid.ny
            if len(flat) != need:
                raise SceneFormatError(
                    lineno, f"values needs {need} numbers ({grid.nx}*{grid.ny} re/im pairs), got {len(flat)}"
                )
            nums = np.array([float(t) for t in flat], dtype=np.float64)
            refl = (nums[0::2] + 1j * nums[1::2]).reshape(grid.shape)
        else:
            raise SceneFormatError(lineno, f"unknown directive {word!r}")
    if grid is None or refl is None:
        raise SceneFormatError(len(lines) or 1, "missing grid directive")
    if z0 is None:
        raise SceneFormatError(len(lines) or 1, "scene has no z0 directive and no default was given")
    return SceneSpec(grid, refl, z0)


def load_scene(path: str, default_z0: float | None = None) -> SceneSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scene(fh.read(), default_z0=default_z0)


def simulate_scattered_field(
    scene: SceneSpec,
    params: PropagationParams,
    gain_taper: np.ndarray | None = None,
) -> ComplexField:
    """Field at the scan plane scattered by a unit-illuminated scene.

    The reflectivity map is treated as the field leaving the scene plane
    and propagated z0 mm to the scan plane (mode per params; monostatic
    uses the round-trip propagator).  gain_taper, if given, is a
    nonnegative real map on the same grid applied multiplicatively at the
    scan plane to model probe falloff.
    """
    scattered = asm_propagate(scene.as_field(), scene.z0, params)
    if gain_taper is not None:
        taper = np.asarray(gain_taper, dtype=np.float64)
        if taper.shape != scene.grid.shape:
            raise ValueError(
                f"gain taper shape {taper.shape} does not match grid {scene.grid.shape}"
            )
        if (taper < 0).any():
            raise ValueError("gain taper must be nonnegative")
        scattered = scattered.with_samples(scattered.samples * taper)
    return scattered
