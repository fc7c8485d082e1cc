"""Back-propagation to the scene plane and amplitude/phase image formation."""

import numpy as np
import pytest

from mwholo import (
    ComplexField,
    PropagationParams,
    ScanGrid,
    amplitude_image,
    asm_propagate,
    backpropagate,
    center_spectrum,
    dft2,
    reconstruct,
    wrapped_phase,
)

from conftest import band_limited_field

PAPER_GRID = ScanGrid(40, 40, 5.0, 5.0)
PARAMS = PropagationParams(9.1)


def _centered_spectrum(field: ComplexField) -> ComplexField:
    return center_spectrum(dft2(field))


class TestBackpropagate:
    def test_negative_distance_rejected(self):
        spectrum = ComplexField(PAPER_GRID, np.ones(PAPER_GRID.shape, dtype=complex))
        with pytest.raises(ValueError):
            backpropagate(spectrum, -1.0, PARAMS)

    def test_zero_distance_is_inverse_transform(self):
        field = band_limited_field(PAPER_GRID, bandwidth=3, seed=5)
        spectrum = _centered_spectrum(field)
        out = backpropagate(spectrum, 0.0, PARAMS)
        assert np.max(np.abs(out.samples - field.samples)) < 1e-12

    @pytest.mark.parametrize("z0", [5.0, 25.0, 100.0])
    def test_undoes_forward_propagation(self, z0):
        scene_field = band_limited_field(PAPER_GRID, bandwidth=3, seed=11)
        at_scan_plane = asm_propagate(scene_field, z0, PARAMS)
        recovered = backpropagate(_centered_spectrum(at_scan_plane), z0, PARAMS)
        err = np.max(np.abs(recovered.samples - scene_field.samples))
        assert err < 1e-10 * np.max(np.abs(scene_field.samples))

    def test_mode_changes_result(self):
        field = band_limited_field(PAPER_GRID, bandwidth=3, seed=2)
        spectrum = _centered_spectrum(field)
        mono = backpropagate(spectrum, 25.0, PropagationParams(9.1, "monostatic"))
        one_way = backpropagate(spectrum, 25.0, PropagationParams(9.1, "one-way"))
        assert np.max(np.abs(mono.samples - one_way.samples)) > 1e-3


class TestImageFormation:
    def test_amplitude_is_magnitude(self, rng):
        samples = rng.normal(size=PAPER_GRID.shape) + 1j * rng.normal(size=PAPER_GRID.shape)
        field = ComplexField(PAPER_GRID, samples)
        amp = amplitude_image(field)
        assert np.all(amp.samples >= 0)
        assert np.max(np.abs(amp.samples - np.abs(samples))) == 0.0

    def test_phase_range_is_half_open(self):
        samples = np.array(
            [[1 + 0j, -1 + 0j], [complex(-1.0, -0.0), 1j]], dtype=complex
        )
        grid = ScanGrid(2, 2, 5.0, 5.0)
        phase = wrapped_phase(ComplexField(grid, samples)).samples
        assert phase[0, 0] == 0.0
        assert phase[0, 1] == pytest.approx(np.pi)
        # -pi maps onto +pi: the interval is (-pi, pi]
        assert phase[1, 0] == pytest.approx(np.pi)
        assert phase[1, 0] > 0
        assert phase[1, 1] == pytest.approx(np.pi / 2)

    def test_zero_sample_has_zero_phase(self):
        grid = ScanGrid(2, 2, 5.0, 5.0)
        samples = np.array([[0j, 1j], [0j, -2j]], dtype=complex)
        phase = wrapped_phase(ComplexField(grid, samples)).samples
        assert phase[0, 0] == 0.0
        assert phase[1, 0] == 0.0

    def test_amplitude_phase_factorization(self, rng):
        samples = rng.normal(size=PAPER_GRID.shape) + 1j * rng.normal(size=PAPER_GRID.shape)
        field = ComplexField(PAPER_GRID, samples)
        amp = amplitude_image(field).samples
        phase = wrapped_phase(field).samples
        rebuilt = amp * np.exp(1j * phase)
        assert np.max(np.abs(rebuilt - samples)) < 1e-12 * np.max(np.abs(samples))


class TestReconstruct:
    def test_bundles_consistent_views(self):
        scene_field = band_limited_field(PAPER_GRID, bandwidth=3, seed=7)
        spectrum = _centered_spectrum(asm_propagate(scene_field, 25.0, PARAMS))
        result = reconstruct(spectrum, 25.0, PARAMS)
        assert result.z0 == 25.0
        assert result.params is PARAMS
        assert np.array_equal(result.amplitude.samples, np.abs(result.field.samples))
        rebuilt = result.amplitude.samples * np.exp(1j * result.phase.samples)
        assert np.max(np.abs(rebuilt - result.field.samples)) < 1e-12
        err = np.max(np.abs(result.field.samples - scene_field.samples))
        assert err < 1e-10 * np.max(np.abs(scene_field.samples))
