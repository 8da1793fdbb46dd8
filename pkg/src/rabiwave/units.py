"""Physical constants and unit conversions.

Everything downstream works in SI: angular frequencies in rad/s, decay
rates in 1/s, dipole moments in C*m, fields in V/m.  Config files and
CSV outputs use the "lab" units stated in their keys (ordinary Hz,
Debye, V/cm, cm^-1); the converters below are the single place where
the two meet.

Frequency convention: a config value of ``x`` Hz becomes ``2*pi*x``
rad/s internally, and the same factor applies to decay rates, so that
the Weisskopf-Wigner rate for the stock medium (d = 8.5e-30 C*m at
660 THz) reads back as the familiar 3.4 MHz.
"""

from __future__ import annotations

import math

# Fundamental constants (CODATA 2018)
C_LIGHT = 2.99792458e8        # speed of light in vacuum (m/s, exact)
HBAR = 1.054571817e-34        # reduced Planck constant (J*s)
PLANCK_H = 6.62607015e-34     # Planck constant (J*s, exact)
EPSILON_0 = 8.8541878128e-12  # vacuum permittivity (F/m)
MU_0 = 1.25663706212e-6       # vacuum permeability (N/A^2)

DEBYE = 3.33564e-30           # 1 Debye in C*m

TWO_PI = 2.0 * math.pi


def debye_to_si(d):
    """Dipole moment in Debye -> C*m."""
    return d * DEBYE


def si_to_debye(d):
    """Dipole moment in C*m -> Debye."""
    return d / DEBYE


def hz_to_angular(f):
    """Ordinary frequency in Hz -> angular frequency in rad/s."""
    return TWO_PI * f


def angular_to_hz(omega):
    """Angular frequency in rad/s -> ordinary frequency in Hz."""
    return omega / TWO_PI


def wavenumber_to_angular(b):
    """Spectroscopic wavenumber in cm^-1 -> angular frequency in rad/s."""
    return TWO_PI * C_LIGHT * 100.0 * b


def v_per_cm_to_v_per_m(e):
    """Electric field in V/cm -> V/m."""
    return e * 100.0


def weisskopf_wigner_rate(d_eg, omega0):
    """Spontaneous-emission rate of a dipole transition.

    Parameters
    ----------
    d_eg : float
        Transition dipole moment (C*m, real).
    omega0 : float
        Angular transition frequency (rad/s), > 0.

    Returns
    -------
    float
        gamma_se = omega0^3 * d_eg^2 / (3 pi eps0 hbar c^3), in 1/s.
        Divide by 2*pi to quote it as an ordinary-frequency rate.
    """
    if omega0 <= 0.0:
        raise ValueError("omega0 must be positive")
    return omega0**3 * d_eg**2 / (3.0 * math.pi * EPSILON_0 * HBAR * C_LIGHT**3)
