"""Binary grid container round trips, corruption offsets, and PNG export."""

import struct

import numpy as np
import pytest
from PIL import Image

from mwholo import (
    ComplexField,
    GridFileError,
    RealField,
    ScanGrid,
    export_grayscale,
    read_grid,
    write_grid,
)

GRID = ScanGrid(40, 40, 5.0, 5.0)


def _real_field(rng):
    return RealField(GRID, rng.random(GRID.shape) * 7 - 2)


def _complex_field(rng):
    return ComplexField(GRID, rng.normal(size=GRID.shape) + 1j * rng.normal(size=GRID.shape))


def _good_bytes(tmp_path, rng, complex_=False):
    path = tmp_path / "field.grid"
    write_grid(path, _complex_field(rng) if complex_ else _real_field(rng))
    return path, path.read_bytes()


class TestRoundTrip:
    def test_real_round_trip_bit_identical(self, tmp_path, rng):
        field = _real_field(rng)
        path = tmp_path / "real.grid"
        write_grid(path, field)
        back = read_grid(path)
        assert isinstance(back, RealField)
        assert back.grid == field.grid
        assert np.array_equal(back.samples, field.samples)

    def test_complex_round_trip_bit_identical(self, tmp_path, rng):
        field = _complex_field(rng)
        path = tmp_path / "cplx.grid"
        write_grid(path, field)
        back = read_grid(path)
        assert isinstance(back, ComplexField)
        assert back.grid == field.grid
        assert np.array_equal(back.samples, field.samples)

    def test_rewrite_is_deterministic(self, tmp_path, rng):
        field = _real_field(rng)
        p1, p2 = tmp_path / "a.grid", tmp_path / "b.grid"
        write_grid(p1, field)
        write_grid(p2, field)
        assert p1.read_bytes() == p2.read_bytes()

    def test_header_layout(self, tmp_path, rng):
        path, blob = _good_bytes(tmp_path, rng)
        magic, version, kind, nx, ny, dx, dy = struct.unpack("<4sHHIIdd", blob[:32])
        assert magic == b"MWGF"
        assert version == 1
        assert kind == 0
        assert (nx, ny) == (40, 40)
        assert (dx, dy) == (5.0, 5.0)
        assert len(blob) == 32 + 40 * 40 * 8

    def test_complex_payload_is_interleaved(self, tmp_path, rng):
        field = _complex_field(rng)
        path = tmp_path / "c.grid"
        write_grid(path, field)
        blob = path.read_bytes()
        assert struct.unpack_from("<H", blob, 6)[0] == 1
        payload = np.frombuffer(blob[32:], dtype="<f8")
        assert payload[0] == field.samples[0, 0].real
        assert payload[1] == field.samples[0, 0].imag


class TestCorruptionOffsets:
    def _mangle(self, tmp_path, blob):
        path = tmp_path / "bad.grid"
        path.write_bytes(blob)
        with pytest.raises(GridFileError) as excinfo:
            read_grid(path)
        return excinfo.value

    def test_bad_magic_offset_zero(self, tmp_path, rng):
        _, blob = _good_bytes(tmp_path, rng)
        err = self._mangle(tmp_path, b"XXXX" + blob[4:])
        assert err.offset == 0
        assert "(at byte 0)" in str(err)

    def test_bad_version_offset_four(self, tmp_path, rng):
        _, blob = _good_bytes(tmp_path, rng)
        err = self._mangle(tmp_path, blob[:4] + struct.pack("<H", 9) + blob[6:])
        assert err.offset == 4

    def test_bad_kind_offset_six(self, tmp_path, rng):
        _, blob = _good_bytes(tmp_path, rng)
        err = self._mangle(tmp_path, blob[:6] + struct.pack("<H", 7) + blob[8:])
        assert err.offset == 6

    def test_zero_nx_offset_eight(self, tmp_path, rng):
        _, blob = _good_bytes(tmp_path, rng)
        err = self._mangle(tmp_path, blob[:8] + struct.pack("<I", 0) + blob[12:])
        assert err.offset == 8

    def test_zero_ny_offset_twelve(self, tmp_path, rng):
        _, blob = _good_bytes(tmp_path, rng)
        err = self._mangle(tmp_path, blob[:12] + struct.pack("<I", 0) + blob[16:])
        assert err.offset == 12

    def test_bad_dx_offset_sixteen(self, tmp_path, rng):
        _, blob = _good_bytes(tmp_path, rng)
        err = self._mangle(tmp_path, blob[:16] + struct.pack("<d", 0.0) + blob[24:])
        assert err.offset == 16

    def test_nan_dy_offset_twenty_four(self, tmp_path, rng):
        _, blob = _good_bytes(tmp_path, rng)
        err = self._mangle(tmp_path, blob[:24] + struct.pack("<d", float("nan")) + blob[32:])
        assert err.offset == 24

    def test_truncated_header_offset_is_file_size(self, tmp_path, rng):
        _, blob = _good_bytes(tmp_path, rng)
        err = self._mangle(tmp_path, blob[:10])
        assert err.offset == 10

    def test_truncated_payload_offset_is_file_size(self, tmp_path, rng):
        _, blob = _good_bytes(tmp_path, rng)
        err = self._mangle(tmp_path, blob[:-8])
        assert err.offset == len(blob) - 8

    def test_trailing_bytes_offset_is_expected_size(self, tmp_path, rng):
        _, blob = _good_bytes(tmp_path, rng)
        err = self._mangle(tmp_path, blob + b"\x00" * 5)
        assert err.offset == len(blob)

    def test_empty_file(self, tmp_path, rng):
        err = self._mangle(tmp_path, b"")
        assert err.offset == 0


class TestGrayscaleExport:
    def _load(self, path):
        with Image.open(path) as im:
            assert im.mode == "L"
            return np.asarray(im)

    def test_minmax_endpoints(self, tmp_path):
        grid = ScanGrid(3, 2, 5.0, 5.0)
        field = RealField(grid, np.array([[0.0, 5.0, 10.0], [0.0, 5.0, 10.0]]))
        path = tmp_path / "m.png"
        export_grayscale(path, field, mapping="minmax")
        pixels = self._load(path)
        assert pixels[0, 0] == 0
        assert pixels[0, 2] == 255
        assert abs(int(pixels[0, 1]) - 128) <= 1

    def test_constant_image_is_mid_gray(self, tmp_path):
        grid = ScanGrid(4, 4, 5.0, 5.0)
        path = tmp_path / "c.png"
        export_grayscale(path, RealField(grid, np.full((4, 4), 3.3)), mapping="minmax")
        assert np.all(self._load(path) == 128)

    def test_phase_mapping_fixed_scale(self, tmp_path):
        grid = ScanGrid(3, 2, 5.0, 5.0)
        row = np.array([-np.pi + 1e-9, 0.0, np.pi])
        field = RealField(grid, np.vstack([row, row]))
        path = tmp_path / "p.png"
        export_grayscale(path, field, mapping="phase")
        pixels = self._load(path)
        assert pixels[0, 0] == 0
        assert abs(int(pixels[0, 1]) - 128) <= 1
        assert pixels[0, 2] == 255

    def test_unknown_mapping_rejected(self, tmp_path):
        grid = ScanGrid(2, 2, 5.0, 5.0)
        with pytest.raises(ValueError):
            export_grayscale(tmp_path / "x.png", RealField(grid, np.ones((2, 2))), mapping="log")
