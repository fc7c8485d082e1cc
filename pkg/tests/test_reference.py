"""Synthesized reference wave and the carrier-offset validity gate."""

import numpy as np
import pytest

from mwholo import (
    ComplexField,
    ReferenceWaveSpec,
    ScanGrid,
    center_spectrum,
    dft2,
    synthesize_reference,
    validate_offset,
    wavenumber,
)


class TestReferenceWaveSpec:
    def test_kr_per_axis(self):
        spec = ReferenceWaveSpec(1.0, 2 * np.pi / 3, ScanGrid(40, 40, 5.0, 4.0))
        assert np.isclose(spec.kr_x, (2 * np.pi / 3) / 5.0)
        assert np.isclose(spec.kr_y, (2 * np.pi / 3) / 4.0)

    def test_range_checks(self):
        grid = ScanGrid(8, 8, 5.0, 5.0)
        with pytest.raises(ValueError):
            ReferenceWaveSpec(0.0, 1.0, grid)
        with pytest.raises(ValueError):
            ReferenceWaveSpec(1.0, 0.0, grid)
        with pytest.raises(ValueError):
            ReferenceWaveSpec(1.0, 2 * np.pi, grid)


class TestSynthesizeReference:
    def test_three_sample_phases(self):
        spec = ReferenceWaveSpec(2.0, 2 * np.pi / 3, ScanGrid(3, 2, 5.0, 5.0))
        ref = synthesize_reference(spec)
        row = ref.samples[0]
        phases = np.angle(row)
        expected = np.array([0.0, -2 * np.pi / 3, -4 * np.pi / 3])
        wrapped = np.mod(phases - expected, 2 * np.pi)
        wrapped = np.minimum(wrapped, 2 * np.pi - wrapped)
        assert np.allclose(wrapped, 0.0, atol=1e-12)
        assert np.allclose(np.abs(ref.samples), 2.0, atol=1e-12)

    def test_phase_step_pi_alternates_sign(self):
        spec = ReferenceWaveSpec(1.0, np.pi, ScanGrid(2, 2, 5.0, 5.0))
        ref = synthesize_reference(spec)
        assert np.allclose(ref.samples, [[1.0, -1.0], [-1.0, 1.0]], atol=1e-12)
        assert np.allclose(ref.samples.imag, 0.0, atol=1e-12)

    def test_constant_modulus_everywhere(self):
        spec = ReferenceWaveSpec(3.5, 1.1, ScanGrid(17, 13, 2.0, 3.0))
        ref = synthesize_reference(spec)
        assert np.allclose(np.abs(ref.samples), 3.5, atol=1e-12)

    def test_diagonal_phase_decrement(self):
        spec = ReferenceWaveSpec(1.0, 0.7, ScanGrid(12, 12, 5.0, 5.0))
        ref = synthesize_reference(spec)
        ratio = ref.samples[1:, 1:] / ref.samples[:-1, :-1]
        # advancing one sample in both x and y multiplies by exp(-2j*step)
        assert np.allclose(ratio, np.exp(-2j * 0.7), atol=1e-12)

    def test_integer_bin_carrier_is_pure_impulse(self):
        # phase step 2*pi*13/40 puts the carrier exactly on bin (-13, -13)
        grid = ScanGrid(40, 40, 5.0, 5.0)
        spec = ReferenceWaveSpec(1.0, 2 * np.pi * 13 / 40, grid)
        ref = synthesize_reference(spec)
        spectrum = center_spectrum(dft2(ref)).samples
        iy, ix = np.unravel_index(np.argmax(np.abs(spectrum)), spectrum.shape)
        assert (ix - 20, iy - 20) == (-13, -13)
        assert np.isclose(np.abs(spectrum[iy, ix]), 40 * 40, rtol=1e-12)
        rest = np.abs(spectrum).sum() - np.abs(spectrum[iy, ix])
        assert rest < 1e-8 * np.abs(spectrum[iy, ix])

    def test_fractional_carrier_leaks_around_prediction(self):
        grid = ScanGrid(40, 40, 5.0, 5.0)
        spec = ReferenceWaveSpec(1.0, 2 * np.pi / 3, grid)
        ref = synthesize_reference(spec)
        spectrum = center_spectrum(dft2(ref)).samples
        iy, ix = np.unravel_index(np.argmax(np.abs(spectrum)), spectrum.shape)
        # nearest bin to the -13.33 prediction on both axes
        assert (ix - 20, iy - 20) == (-13, -13)
        power = np.abs(spectrum) ** 2
        # two-bin neighborhood holds most, but not all, energy (leakage)
        near = power[iy - 1 : iy + 2, ix - 1 : ix + 2].sum()
        assert 0.5 < near / power.sum() < 0.999


class TestValidateOffset:
    def test_reference_configuration_passes(self):
        grid = ScanGrid(40, 40, 5.0, 5.0)
        spec = ReferenceWaveSpec(1.0, 2 * np.pi / 3, grid)
        report = validate_offset(spec, wavenumber(9.1))
        assert report.passed
        assert abs(report.kr_x - 0.41888) < 1e-4
        assert abs(report.two_k - 0.38143) < 1e-4
        assert np.isclose(report.nyquist_x, np.pi / 5.0)

    def test_boundary_kr_equals_two_k_passes(self):
        grid = ScanGrid(40, 40, 5.0, 5.0)
        k = 0.2
        spec = ReferenceWaveSpec(1.0, 2.0 * k * grid.dx, grid)  # kr == 2k exactly
        report = validate_offset(spec, k)
        assert spec.kr_x == 2 * k
        assert report.passed

    def test_coarse_spacing_fails_separation(self):
        grid = ScanGrid(40, 40, 6.0, 6.0)
        spec = ReferenceWaveSpec(1.0, 2 * np.pi / 3, grid)
        report = validate_offset(spec, wavenumber(9.1))
        assert not report.passed
        assert abs(report.kr_x - 0.34907) < 1e-4
        assert not report.separation_ok_x
        assert report.representable_x

    def test_oversized_step_fails_representability(self):
        grid = ScanGrid(40, 40, 5.0, 5.0)
        spec = ReferenceWaveSpec(1.0, 1.2 * np.pi, grid)  # kr > pi/dx
        report = validate_offset(spec, 0.05)
        assert not report.passed
        assert report.separation_ok_x
        assert not report.representable_x

    def test_monotone_in_dx_for_separation_clause(self):
        # finer sampling at fixed phase step only raises kr
        k = wavenumber(9.1)
        previous_pass = False
        for dx in (8.0, 6.0, 5.0, 4.0, 3.0, 2.0):
            grid = ScanGrid(40, 40, dx, dx)
            spec = ReferenceWaveSpec(1.0, 2 * np.pi / 3, grid)
            ok = validate_offset(spec, k).separation_ok_x
            assert ok or not previous_pass  # once passing, stays passing
            previous_pass = previous_pass or ok
        assert previous_pass

    def test_summary_carries_all_numbers(self):
        grid = ScanGrid(40, 40, 8.0, 8.0)
        spec = ReferenceWaveSpec(1.0, 2 * np.pi / 3, grid)
        report = validate_offset(spec, wavenumber(9.1))
        text = report.summary()
        assert f"{report.kr_x:.5f}" in text
        assert f"{report.two_k:.5f}" in text
        assert f"{report.nyquist_x:.5f}" in text
        assert f"{report.lambda_over_6:.3f}" in text
        assert "FAIL" in text

    def test_rejects_bad_wavenumber(self):
        spec = ReferenceWaveSpec(1.0, 1.0, ScanGrid(8, 8, 5.0, 5.0))
        with pytest.raises(ValueError):
            validate_offset(spec, 0.0)
