"""Analytic drive envelopes, the asymmetry parameter kappa, and the Rabi frequency.

The drive is never propagated on the grid: it is a strong beam assumed
unaffected by the medium, evaluated in closed form on the retarded
coordinate x = z - z0 - c*t.  Time derivatives of the envelope (and of
kappa) are therefore exact, not finite-differenced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import mathkit, units

ARCTAN_RAMP = "arctan"
GAUSSIAN_PULSE = "gaussian"
CONSTANT = "constant"

# Below this |d_ee - d_gg| the kappa-based Rabi formula is 0/0; use the
# symmetric two-level limit instead.
DIPOLE_DEGENERACY_THRESHOLD = 1e-40  # C*m


@dataclass(frozen=True)
class DriveSpec:
    """Drive-beam model: shape, peak amplitude, and carrier detuning.

    ``alpha`` is the slope parameter: 1/m for the arctan ramp, 1/m^2 for
    the Gaussian pulse, ignored for a constant drive.  ``delta`` is the
    carrier detuning omega0 - omega in rad/s.
    """

    shape: str
    amplitude: float  # A (V/m)
    alpha: float
    z0: float         # m
    delta: float = 0.0  # rad/s

    def __post_init__(self):
        if self.shape not in (ARCTAN_RAMP, GAUSSIAN_PULSE, CONSTANT):
            raise ValueError(f"unknown drive shape {self.shape!r}")
        if self.amplitude < 0.0:
            raise ValueError("drive amplitude must be non-negative")
        if self.shape != CONSTANT and not self.alpha > 0.0:
            raise ValueError("alpha must be positive for a non-constant drive")


@dataclass(frozen=True)
class KappaSample:
    """kappa and its first two exact time derivatives at one (z, t).

    kappa = E(z,t) (d_ee - d_gg) / (hbar omega); arrays when sampled on
    an array of positions.
    """

    kappa: object        # dimensionless
    dkappa_dt: object    # 1/s
    d2kappa_dt2: object  # 1/s^2


def gaussian_alpha_from_fwhm(fwhm_t):
    """Spatial Gaussian exponent (1/m^2) giving the requested temporal FWHM.

    The envelope A exp(-alpha x^2) seen at a fixed point has amplitude
    FWHM 2 sqrt(ln 2 / alpha) / c in time.
    """
    if fwhm_t <= 0.0:
        raise ValueError("FWHM must be positive")
    return 4.0 * math.log(2.0) / (units.C_LIGHT * fwhm_t) ** 2


def gaussian_fwhm_from_alpha(alpha):
    """Temporal amplitude FWHM (s) of a Gaussian envelope with exponent alpha."""
    return 2.0 * math.sqrt(math.log(2.0) / alpha) / units.C_LIGHT


def envelope(spec: DriveSpec, z, t):
    """Drive envelope E(z, t) in V/m."""
    x = np.asarray(z, dtype=float) - spec.z0 - units.C_LIGHT * t
    if spec.shape == ARCTAN_RAMP:
        out = spec.amplitude * (np.arctan(-spec.alpha * x) + 0.5 * np.pi) / np.pi
    elif spec.shape == GAUSSIAN_PULSE:
        out = spec.amplitude * np.exp(-spec.alpha * x * x)
    else:
        out = np.full_like(x, spec.amplitude)
    if np.ndim(z) == 0:
        return float(out)
    return out


def envelope_dt(spec: DriveSpec, z, t):
    """Exact first time derivative of the envelope (V/m/s)."""
    x = np.asarray(z, dtype=float) - spec.z0 - units.C_LIGHT * t
    c = units.C_LIGHT
    if spec.shape == ARCTAN_RAMP:
        out = spec.amplitude * c * spec.alpha / (np.pi * (1.0 + (spec.alpha * x) ** 2))
    elif spec.shape == GAUSSIAN_PULSE:
        out = 2.0 * spec.alpha * c * x * spec.amplitude * np.exp(-spec.alpha * x * x)
    else:
        out = np.zeros_like(x)
    if np.ndim(z) == 0:
        return float(out)
    return out


def envelope_dt2(spec: DriveSpec, z, t):
    """Exact second time derivative of the envelope (V/m/s^2)."""
    x = np.asarray(z, dtype=float) - spec.z0 - units.C_LIGHT * t
    c2 = units.C_LIGHT**2
    if spec.shape == ARCTAN_RAMP:
        a = spec.alpha
        out = 2.0 * spec.amplitude * c2 * a**3 * x / (np.pi * (1.0 + (a * x) ** 2) ** 2)
    elif spec.shape == GAUSSIAN_PULSE:
        a = spec.alpha
        out = (4.0 * a**2 * x * x - 2.0 * a) * c2 * spec.amplitude * np.exp(-a * x * x)
    else:
        out = np.zeros_like(x)
    if np.ndim(z) == 0:
        return float(out)
    return out


def kappa_sample(spec: DriveSpec, medium, omega, z, t) -> KappaSample:
    """Asymmetry parameter kappa and its exact time derivatives at (z, t)."""
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    scale = medium.dipole_asymmetry / (units.HBAR * omega)
    return KappaSample(
        kappa=envelope(spec, z, t) * scale,
        dkappa_dt=envelope_dt(spec, z, t) * scale,
        d2kappa_dt2=envelope_dt2(spec, z, t) * scale,
    )


def rabi_frequency(kappa, medium, omega, e_field=None):
    """Rabi frequency Omega_R (rad/s) of the driven transition.

    Omega_R = d_eg * omega * J_1(kappa) / (d_ee - d_gg).  When the
    permanent dipoles are degenerate kappa vanishes identically and the
    formula is 0/0; the symmetric-limit form E d_eg / (2 hbar) is used
    instead, which requires the envelope value ``e_field``.
    """
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    dd = medium.dipole_asymmetry
    if abs(dd) > DIPOLE_DEGENERACY_THRESHOLD:
        return medium.d_eg * omega * mathkit.bessel_j(1, kappa) / dd
    if e_field is None:
        raise ValueError("degenerate dipoles: the envelope value is needed "
                         "to reconstruct the symmetric-limit Rabi frequency")
    return e_field * medium.d_eg / (2.0 * units.HBAR)


def carrier_omega(medium, spec: DriveSpec) -> float:
    """Drive carrier angular frequency omega = omega0 - delta."""
    return medium.omega0 - spec.delta
