"""Binary grid files and PNG previews.

Grid file layout (all little endian)::

    offset  size  field
    0       4     magic  b"MWGF"
    4       2     format version, currently 1 (uint16)
    6       2     sample kind: 0 real, 1 complex interleaved (uint16)
    8       4     nx (uint32)
    12      4     ny (uint32)
    16      8     dx in mm (float64)
    24      8     dy in mm (float64)
    32      -     payload: float64 samples, row-major with x fastest;
                  complex grids interleave (re, im) per sample

Writing the same field twice produces byte-identical files.  Reading
validates every header field and the exact payload length; failures
raise GridFileError carrying the byte offset of the first missing or
non-conforming byte.
"""

from __future__ import annotations

import struct

import numpy as np
from PIL import Image

from .fields import ComplexField, RealField, ScanGrid

__all__ = ["GridFileError", "write_grid", "read_grid", "export_grayscale", "MAGIC", "VERSION"]

MAGIC = b"MWGF"
VERSION = 1
_HEADER = struct.Struct("<4sHHIIdd")
_KIND_REAL = 0
_KIND_COMPLEX = 1


class GridFileError(ValueError):
    """Malformed grid file; offset is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def write_grid(path: str, field: RealField | ComplexField) -> None:
    """Serialize a field to path.  Deterministic: equal fields give equal bytes."""
    if isinstance(field, RealField):
        kind = _KIND_REAL
        payload = field.samples.astype("<f8").tobytes()
    elif isinstance(field, ComplexField):
        kind = _KIND_COMPLEX
        inter = np.empty((field.grid.ny, field.grid.nx, 2), dtype="<f8")
        inter[..., 0] = field.samples.real
        inter[..., 1] = field.samples.imag
        payload = inter.tobytes()
    else:
        raise TypeError(f"expected RealField or ComplexField, got {type(field).__name__}")
    grid = field.grid
    header = _HEADER.pack(MAGIC, VERSION, kind, grid.nx, grid.ny, grid.dx, grid.dy)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)


def read_grid(path: str) -> RealField | ComplexField:
    """Read a grid file, validating header and exact payload length."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise GridFileError(
            f"file ends inside the {_HEADER.size}-byte header", offset=len(blob)
        )
    magic, version, kind, nx, ny, dx, dy = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise GridFileError(f"bad magic {magic!r}, expected {MAGIC!r}", offset=0)
    if version != VERSION:
        raise GridFileError(f"unsupported version {version}, expected {VERSION}", offset=4)
    if kind not in (_KIND_REAL, _KIND_COMPLEX):
        raise GridFileError(f"unknown sample kind {kind}", offset=6)
    if nx < 2:
        raise GridFileError(f"bad nx {nx}", offset=8)
    if ny < 2:
        raise GridFileError(f"bad ny {ny}", offset=12)
    if not (np.isfinite(dx) and dx > 0):
        raise GridFileError(f"bad dx {dx}", offset=16)
    if not (np.isfinite(dy) and dy > 0):
        raise GridFileError(f"bad dy {dy}", offset=24)
    values_per_sample = 2 if kind == _KIND_COMPLEX else 1
    expected = _HEADER.size + nx * ny * values_per_sample * 8
    if len(blob) < expected:
        raise GridFileError(
            f"payload truncated: expected {expected} bytes total, file has {len(blob)}",
            offset=len(blob),
        )
    if len(blob) > expected:
        raise GridFileError(
            f"trailing data: expected {expected} bytes total, file has {len(blob)}",
            offset=expected,
        )
    grid = ScanGrid(int(nx), int(ny), float(dx), float(dy))
    flat = np.frombuffer(blob, dtype="<f8", offset=_HEADER.size)
    if kind == _KIND_REAL:
        return RealField(grid, flat.reshape(grid.shape))
    pairs = flat.reshape(grid.ny, grid.nx, 2)
    return ComplexField(grid, pairs[..., 0] + 1j * pairs[..., 1])


def export_grayscale(path: str, field: RealField, mapping: str = "minmax") -> None:
    """Write an 8-bit grayscale PNG preview of a real field.

    mapping 'minmax' stretches [min, max] to [0, 255] and renders a
    constant image as uniform mid-gray 128; 'phase' maps the fixed range
    (-pi, pi] linearly onto [0, 255] so phase images are comparable
    across runs.  Row 0 is the top image row.
    """
    arr = field.samples
    if mapping == "minmax":
        lo = float(arr.min())
        hi = float(arr.max())
        if hi > lo:
            scaled = (arr - lo) / (hi - lo) * 255.0
        else:
            scaled = np.full(arr.shape, 128.0)
    elif mapping == "phase":
        scaled = (arr + np.pi) / (2.0 * np.pi) * 255.0
    else:
        raise ValueError(f"mapping must be 'minmax' or 'phase', got {mapping!r}")
    img = np.clip(np.round(scaled), 0, 255).astype(np.uint8)
    Image.fromarray(img, mode="L").save(path, format="PNG")
