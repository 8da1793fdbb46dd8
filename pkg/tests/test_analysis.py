"""Spectral peak extraction, the generalized frequency, and beat measurement."""

import math

import numpy as np
import pytest

from rabiwave import analysis


class TestSpectrumPeak:
    def test_synthetic_tone(self):
        dt = 3.336e-12
        t = dt * np.arange(int(49e-9 / dt))
        f0 = 1.97e9
        report = analysis.spectrum_peak(t, np.sin(2 * np.pi * f0 * t), gate=(0.0, t[-1]))
        assert report.peak_frequency == pytest.approx(f0, rel=0.005)
        assert report.refined

    def test_constant_series(self):
        t = np.linspace(0.0, 1e-6, 256)
        report = analysis.spectrum_peak(t, np.full_like(t, 4.2), gate=(0.0, 1e-6))
        assert report.peak_amplitude == 0.0
        assert report.peak_frequency == 0.0

    def test_gate_outside_series(self):
        t = np.linspace(0.0, 1e-6, 256)
        with pytest.raises(ValueError, match="gate"):
            analysis.spectrum_peak(t, np.sin(1e7 * t), gate=(2e-6, 3e-6))

    def test_non_uniform_sampling(self):
        t = np.concatenate([np.linspace(0, 1e-6, 128), np.linspace(1.1e-6, 3e-6, 128)])
        with pytest.raises(ValueError, match="non-uniform sampling"):
            analysis.spectrum_peak(t, np.sin(1e7 * t), gate=(0.0, 3e-6))

    def test_amplitude_rescaling_leaves_frequency(self):
        dt = 1e-11
        t = dt * np.arange(8192)
        x = np.sin(2 * np.pi * 1.3e9 * t) + 0.2 * np.sin(2 * np.pi * 0.4e9 * t)
        a = analysis.spectrum_peak(t, x, gate=(0.0, t[-1]))
        b = analysis.spectrum_peak(t, 1234.5 * x, gate=(0.0, t[-1]))
        assert b.peak_frequency == a.peak_frequency
        assert b.peak_amplitude == pytest.approx(1234.5 * a.peak_amplitude, rel=1e-12)


class TestTheoreticalFrequency:
    def test_resonant(self):
        omega_r = 2 * math.pi * 0.99e9
        assert analysis.theoretical_frequency(omega_r, 0.0) == 2 * omega_r

    def test_pure_detuning(self):
        delta = 2 * math.pi * 4.6e8
        assert analysis.theoretical_frequency(0.0, delta) == pytest.approx(delta, rel=1e-12)

    def test_paper_style_values(self):
        omega = analysis.theoretical_frequency(2 * math.pi * 0.985e9, 2 * math.pi * 0.460e9)
        assert omega / (2 * math.pi) == pytest.approx(2.023e9, rel=1e-3)

    def test_monotonicity(self):
        base = analysis.theoretical_frequency(1e9, 5e8)
        assert analysis.theoretical_frequency(1.2e9, 5e8) > base
        assert analysis.theoretical_frequency(1e9, 7e8) > base
        assert analysis.theoretical_frequency(1e9, -7e8) > base


class TestSpatialBeat:
    def test_synthetic_product(self):
        k1, k2 = 2 * np.pi / 0.08, 2 * np.pi / 0.6
        z = np.linspace(0.0, 1.2, 2400)
        period = analysis.spatial_beat_period(z, np.sin(k1 * z) * np.sin(k2 * z))
        assert period == pytest.approx(2 * np.pi / k2, rel=0.02)

    def test_flat_envelope_reports_none(self):
        z = np.linspace(0.0, 0.5, 600)
        assert analysis.spatial_beat_period(z, np.sin(2 * np.pi * z / 0.07)) is None

    def test_non_oscillatory_raises(self):
        z = np.linspace(0.0, 0.5, 100)
        with pytest.raises(ValueError, match="non-oscillatory"):
            analysis.spatial_beat_period(z, z**2)


class TestEnvelopeExtrema:
    def test_monotone_buildup_counts_zero(self):
        t = np.linspace(0.0, 1e-7, 20000)
        x = (t / t[-1]) * np.sin(2 * np.pi * 2e9 * t)
        assert analysis.envelope_extrema_count(t, x, 0.0) == 0

    def test_modulated_counts_extrema(self):
        t = np.linspace(0.0, 1e-7, 40000)
        env = 1.0 + 0.7 * np.sin(2 * np.pi * t / 4e-8)
        x = env * np.sin(2 * np.pi * 2e9 * t)
        count = analysis.envelope_extrema_count(t, x, 0.0)
        assert count >= 3
