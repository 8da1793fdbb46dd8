"""Explicit second-order solver for the 1D signal wave equation.

Solves  -d2f/dz2 + (1/c^2) d2f/dt2 = s(z, t)  on a uniform grid with
three retained time levels.  Interior update:

    f[i+1,j] = eta^2 (f[i,j+1] + f[i,j-1]) + 2 (1 - eta^2) f[i,j]
               - f[i-1,j] + c^2 dt^2 s[i,j]

with eta = c dt / dz.  At eta = 1 (the "magic step") the stencil is an
exact d'Alembert translation: no numerical dispersion.  The domain ends
use transparent (outflow) updates assuming no sources there; at eta = 1
they reduce to pure one-cell advection out of the grid.

The first step needs initial values f0 and velocities g; it is one-sided
in time but retains O(dt^2) accuracy:

    f[1,j] = eta^2/2 (f[0,j-1] + f[0,j+1]) + (1 - eta^2) f[0,j]
             + dt g[j] + c^2 dt^2 / 2 s[0,j]
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import units
from .params import ConfigError, GridSpec


@dataclass
class WaveGrid:
    """Signal-field values on three time levels plus initial velocities."""

    spec: GridSpec
    f_prev: np.ndarray = None  # level i-1 (V/m)
    f_curr: np.ndarray = None  # level i
    f_next: np.ndarray = None  # level i+1 (written by the step functions)
    g: np.ndarray = None       # initial velocity df/dt at t0 (V/m/s)

    def __post_init__(self):
        n = self.spec.n_points
        for name in ("f_prev", "f_curr", "f_next", "g"):
            if getattr(self, name) is None:
                setattr(self, name, np.zeros(n))
            elif len(getattr(self, name)) != n:
                raise ValueError(f"{name} must have {n} entries")

    def rotate(self):
        """Shift levels after a step: (i-1, i, i+1) -> (i, i+1, scratch)."""
        self.f_prev, self.f_curr, self.f_next = self.f_curr, self.f_next, self.f_prev


def courant(spec: GridSpec) -> float:
    """Courant number eta = c dt / dz; rejects the unstable regime eta > 1."""
    if spec.dz <= 0.0 or spec.dt <= 0.0:
        raise ConfigError("grid steps must be positive")
    eta = units.C_LIGHT * spec.dt / spec.dz
    if eta > 1.0 + 1e-12:
        raise ConfigError(f"grid.eta: Courant number exceeds 1 (eta = {eta:g})")
    return eta


def first_step(w: WaveGrid, s0) -> np.ndarray:
    """Advance from the initial level t0 to t1.

    ``w.f_prev`` must hold f at t0 and ``w.g`` the initial velocities;
    ``s0`` is the source at t0 (zero at the boundary points by
    assumption).  Writes and returns ``w.f_next``.
    """
    s0 = np.asarray(s0, dtype=float)
    f0 = w.f_prev
    if len(s0) != len(f0):
        raise ValueError("source array does not match the grid")
    eta = w.spec.eta
    eta2 = eta * eta
    dt = w.spec.dt
    out = w.f_next
    out[1:-1] = (0.5 * eta2 * (f0[:-2] + f0[2:]) + (1.0 - eta2) * f0[1:-1]
                 + dt * w.g[1:-1] + 0.5 * (units.C_LIGHT * dt) ** 2 * s0[1:-1])
    out[0] = eta2 * f0[1] + (1.0 - eta2) * f0[0] + (1.0 - eta) * dt * w.g[0]
    out[-1] = eta2 * f0[-2] + (1.0 - eta2) * f0[-1] + (1.0 - eta) * dt * w.g[-1]
    return out


def interior_step(w: WaveGrid, s) -> np.ndarray:
    """Advance interior points one step given the source at the current level."""
    s = np.asarray(s, dtype=float)
    if len(s) != len(w.f_curr):
        raise ValueError("source array does not match the grid")
    eta2 = w.spec.eta**2
    f, fp = w.f_curr, w.f_prev
    w.f_next[1:-1] = (eta2 * (f[2:] + f[:-2]) + 2.0 * (1.0 - eta2) * f[1:-1]
                      - fp[1:-1] + (units.C_LIGHT * w.spec.dt) ** 2 * s[1:-1])
    return w.f_next


def boundary_step(w: WaveGrid) -> np.ndarray:
    """Transparent-boundary update of the two edge points."""
    eta = w.spec.eta
    eta2 = eta * eta
    f, fp = w.f_curr, w.f_prev
    w.f_next[0] = (2.0 * eta2 * f[1] + 2.0 * (1.0 - eta2) * f[0]
                   + (eta - 1.0) * fp[0]) / (1.0 + eta)
    w.f_next[-1] = (2.0 * eta2 * f[-2] + 2.0 * (1.0 - eta2) * f[-1]
                    + (eta - 1.0) * fp[-1]) / (1.0 + eta)
    return w.f_next
