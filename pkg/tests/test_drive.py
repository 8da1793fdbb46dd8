"""Drive envelopes, kappa derivatives, and the Rabi frequency."""

import math
from dataclasses import replace

import numpy as np
import pytest

from rabiwave import units
from rabiwave.drive import (ARCTAN_RAMP, CONSTANT, GAUSSIAN_PULSE, DriveSpec,
                            envelope, envelope_dt, gaussian_alpha_from_fwhm,
                            gaussian_fwhm_from_alpha, kappa_sample, rabi_frequency)
from rabiwave.params import MediumParams

MEDIUM = MediumParams(
    omega0=2 * math.pi * 660e12, d_ee=8.5e-30, d_gg=0.0, d_eg=8.5e-30,
    gamma_se=2 * math.pi * 3.4e6, gamma_coll=2 * math.pi * 65e3,
    concentration=6.7e18)

RAMP = DriveSpec(shape=ARCTAN_RAMP, amplitude=1.55e5, alpha=1.9, z0=-5.3)
PULSE = DriveSpec(shape=GAUSSIAN_PULSE, amplitude=1.55e5,
                  alpha=gaussian_alpha_from_fwhm(36e-9), z0=-20.0)


def test_arctan_midpoint_is_half_amplitude():
    t = 2.0 / units.C_LIGHT
    z = RAMP.z0 + units.C_LIGHT * t  # retarded argument zero
    assert envelope(RAMP, z, t) == pytest.approx(RAMP.amplitude / 2, rel=1e-12)


def test_arctan_saturates_to_amplitude():
    value = envelope(RAMP, 0.0, 1.0)  # ct = 3e8 m past the ramp
    assert value == pytest.approx(RAMP.amplitude, rel=1e-8)
    assert value < RAMP.amplitude


def test_gaussian_peak_and_fwhm():
    t0 = (0.53 - PULSE.z0) / units.C_LIGHT
    assert envelope(PULSE, 0.53, t0) == pytest.approx(PULSE.amplitude, rel=1e-12)
    # temporal amplitude FWHM at a fixed point equals the requested width
    half = 0.5 * PULSE.amplitude
    dt_half = math.sqrt(math.log(2.0) / PULSE.alpha) / units.C_LIGHT
    assert envelope(PULSE, 0.53, t0 + dt_half) == pytest.approx(half, rel=1e-12)
    assert 2 * dt_half == pytest.approx(36e-9, rel=1e-12)
    assert gaussian_fwhm_from_alpha(PULSE.alpha) == pytest.approx(36e-9, rel=1e-12)


def test_gaussian_envelope_symmetric():
    t = 1e-7
    center = PULSE.z0 + units.C_LIGHT * t
    for s in (0.01, 0.3, 2.0):
        assert envelope(PULSE, center + s, t) == pytest.approx(
            envelope(PULSE, center - s, t), rel=1e-12)


def test_kappa_zero_field():
    spec = DriveSpec(shape=CONSTANT, amplitude=0.0, alpha=0.0, z0=0.0)
    k = kappa_sample(spec, MEDIUM, MEDIUM.omega0, 0.1, 1e-9)
    assert (k.kappa, k.dkappa_dt, k.d2kappa_dt2) == (0.0, 0.0, 0.0)


def test_kappa_constant_drive_has_no_time_dependence():
    spec = DriveSpec(shape=CONSTANT, amplitude=1e5, alpha=0.0, z0=0.0)
    k = kappa_sample(spec, MEDIUM, MEDIUM.omega0, 0.2, 5e-9)
    assert k.dkappa_dt == 0.0 and k.d2kappa_dt2 == 0.0
    assert k.kappa == pytest.approx(1e5 * 8.5e-30 / (units.HBAR * MEDIUM.omega0), rel=1e-12)


def test_kappa_baseline_magnitude():
    t = (0.3 - RAMP.z0) / units.C_LIGHT + 60e-9  # well past the ramp at z = 0.3
    k = kappa_sample(RAMP, MEDIUM, MEDIUM.omega0, 0.3, t)
    assert k.kappa == pytest.approx(3.0e-6, rel=0.02)


@pytest.mark.parametrize("spec", [RAMP, PULSE], ids=["arctan", "gaussian"])
def test_kappa_derivatives_match_finite_differences(spec):
    rng = np.random.default_rng(21)
    h = 1e-12  # 1 ps
    for _ in range(100):
        z = rng.uniform(0.0, 0.53)
        t = rng.uniform(10e-9, 120e-9)
        k = kappa_sample(spec, MEDIUM, MEDIUM.omega0, z, t)
        plus = kappa_sample(spec, MEDIUM, MEDIUM.omega0, z, t + h).kappa
        minus = kappa_sample(spec, MEDIUM, MEDIUM.omega0, z, t - h).kappa
        fd1 = (plus - minus) / (2 * h)
        scale = max(abs(fd1), 1e-12 * abs(k.kappa) / h)
        assert abs(k.dkappa_dt - fd1) <= 1e-6 * scale
        fd2 = (plus - 2 * k.kappa + minus) / h**2
        scale2 = max(abs(k.d2kappa_dt2), abs(k.kappa) / h**2 * 1e-10)
        assert abs(k.d2kappa_dt2 - fd2) <= 2e-3 * scale2


def test_rabi_zero_kappa():
    assert rabi_frequency(0.0, MEDIUM, MEDIUM.omega0) == 0.0


def test_rabi_small_kappa_limit():
    e_field = 1.55e5
    kappa = e_field * MEDIUM.dipole_asymmetry / (units.HBAR * MEDIUM.omega0)
    omega_r = rabi_frequency(kappa, MEDIUM, MEDIUM.omega0)
    familiar = e_field * MEDIUM.d_eg / (2 * units.HBAR)
    assert abs(omega_r - familiar) / familiar < kappa**2 / 8


def test_rabi_baseline_value():
    e_field = 1.55e5
    kappa = e_field * MEDIUM.dipole_asymmetry / (units.HBAR * MEDIUM.omega0)
    omega_r = rabi_frequency(kappa, MEDIUM, MEDIUM.omega0)
    assert omega_r / (2 * math.pi) == pytest.approx(0.99e9, rel=0.01)
    # population oscillation at twice the Rabi frequency, near the reported tone
    assert 2 * omega_r / (2 * math.pi) == pytest.approx(1.97e9, rel=0.02)


def test_rabi_odd_in_transition_dipole():
    kappa = 2.5e-6
    flipped = replace(MEDIUM, d_eg=-MEDIUM.d_eg)
    assert rabi_frequency(kappa, flipped, MEDIUM.omega0) == -rabi_frequency(
        kappa, MEDIUM, MEDIUM.omega0)


def test_rabi_invariant_under_asymmetry_sign_flip():
    kappa = 2.5e-6
    flipped = replace(MEDIUM, d_ee=-8.5e-30)
    assert rabi_frequency(-kappa, flipped, MEDIUM.omega0) == pytest.approx(
        rabi_frequency(kappa, MEDIUM, MEDIUM.omega0), rel=1e-12)


def test_rabi_degenerate_dipoles():
    sym = replace(MEDIUM, d_ee=5e-30, d_gg=5e-30)
    e_field = 1e5
    omega_r = rabi_frequency(0.0, sym, sym.omega0, e_field=e_field)
    assert omega_r == pytest.approx(e_field * sym.d_eg / (2 * units.HBAR), rel=1e-12)
    with pytest.raises(ValueError, match="degenerate"):
        rabi_frequency(0.0, sym, sym.omega0)


def test_drive_spec_validation():
    with pytest.raises(ValueError):
        DriveSpec(shape="sawtooth", amplitude=1.0, alpha=1.0, z0=0.0)
    with pytest.raises(ValueError):
        DriveSpec(shape=ARCTAN_RAMP, amplitude=-1.0, alpha=1.0, z0=0.0)
    with pytest.raises(ValueError):
        DriveSpec(shape=GAUSSIAN_PULSE, amplitude=1.0, alpha=0.0, z0=0.0)
