"""RWA Bloch equations for the driven polar two-level medium.

State per grid point: the excited-state population rho_ee and the
slowly varying coherence envelope r_eg (rho_gg = 1 - rho_ee).  The
equations of motion are

    d rho_ee / dt = 2 Im(Omega_R* r_eg)
                    + 2 (E_s/hbar) J_1(kappa) Im(d_eg* r_eg)
                    - 2 gamma_se rho_ee
    d r_eg / dt   = i [-delta + dkappa/dt + (E_s/hbar)(d_ee - d_gg)] r_eg
                    + i [Omega_R + (E_s/hbar) J_1(kappa) d_eg] (1 - 2 rho_ee)
                    - (gamma_se + gamma_coll) r_eg

with E_s the instantaneous real signal field at the point.  Every grid
point evolves independently (classical RK4 in time); the coupling to
the wave solver happens only through E_s and, in return, through the
source assembled from the history of (rho_ee, Re r_eg).

Signal-field values at the RK4 half and full stage times are not
carried by the field scheme; they are linearly extrapolated from the
two most recent field levels, consistent with the O(dt^2) accuracy of
the wave stencil.  kappa at stage times is exact (analytic envelope).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import mathkit, units
from .drive import (DIPOLE_DEGENERACY_THRESHOLD, DriveSpec, KappaSample, carrier_omega,
                    envelope, envelope_dt, envelope_dt2)

POPULATION_TOL = 1e-9  # numerical slack on 0 <= rho_ee <= 1 and positivity


@dataclass(frozen=True)
class BlochPointState:
    """Reduced density-matrix state (or its time derivative) at one point."""

    rho_ee: float
    r_eg: complex


@dataclass
class BlochGrid:
    """Per-grid-point Bloch states plus the previous time level.

    Arrays span the full spatial grid; only indices in ``sample`` carry
    medium and are advanced.  The previous level of (rho_ee, Re r_eg)
    is retained because the radiation source differentiates those
    quantities over three time levels.
    """

    zs: np.ndarray        # full grid positions (m)
    sample: slice         # indices inside the sample interval
    rho_ee: np.ndarray    # current level, full length
    r_eg: np.ndarray      # current level, complex, full length
    rho_prev: np.ndarray  # previous level of rho_ee (full length)
    re_r_prev: np.ndarray  # previous level of Re r_eg (full length)

    @classmethod
    def ground(cls, zs, sample):
        n = len(zs)
        return cls(zs=np.asarray(zs, dtype=float), sample=sample,
                   rho_ee=np.zeros(n), r_eg=np.zeros(n, dtype=complex),
                   rho_prev=np.zeros(n), re_r_prev=np.zeros(n))

    @property
    def n_points(self):
        return len(self.zs)


@dataclass(frozen=True)
class DriveContext:
    """Everything the grid advance needs to evaluate the drive at stage times."""

    drive: DriveSpec
    medium: object  # MediumParams
    t: float        # current time t_i (s)

    @property
    def omega(self):
        return carrier_omega(self.medium, self.drive)


@dataclass
class StageContext:
    """Precomputed drive-derived arrays at one stage time over sample points.

    ``full`` contexts additionally carry kappa's second derivative and
    the Bessel derivatives needed by the radiation source.
    """

    env: np.ndarray       # drive envelope (V/m)
    kappa: np.ndarray
    dkappa: np.ndarray    # dkappa/dt (1/s)
    j1: np.ndarray        # J_1(kappa)
    omega_r: np.ndarray   # Rabi frequency (rad/s)
    d2kappa: np.ndarray | None = None  # d^2 kappa/dt^2 (1/s^2)
    j1p: np.ndarray | None = None      # J_1'(kappa)
    j1pp: np.ndarray | None = None     # J_1''(kappa)


def stage_context(spec: DriveSpec, medium, omega, zs, t, full=False) -> StageContext:
    """Evaluate the drive quantities entering the Bloch/source equations."""
    env = envelope(spec, zs, t)
    dd = medium.dipole_asymmetry
    scale = dd / (units.HBAR * omega)
    kappa = env * scale
    dkappa = envelope_dt(spec, zs, t) * scale
    j1 = mathkit.bessel_j(1, kappa)
    if abs(dd) > DIPOLE_DEGENERACY_THRESHOLD:
        omega_r = medium.d_eg * omega * j1 / dd
    else:
        omega_r = env * medium.d_eg / (2.0 * units.HBAR)
    ctx = StageContext(env=env, kappa=kappa, dkappa=dkappa, j1=j1, omega_r=omega_r)
    if full:
        ctx.d2kappa = envelope_dt2(spec, zs, t) * scale
        ctx.j1p = mathkit.bessel_j1_prime(kappa)
        ctx.j1pp = mathkit.bessel_j1_second(kappa)
    return ctx


def _rhs(rho, r, e_signal, dkappa, j1, omega_r, delta, medium):
    """Right-hand side of the Bloch equations; scalars or arrays."""
    coupling = e_signal / units.HBAR
    drive = omega_r + coupling * j1 * medium.d_eg
    detune = -delta + dkappa + coupling * medium.dipole_asymmetry
    drho = 2.0 * drive * np.imag(r) - 2.0 * medium.gamma_se * rho
    dr = (1j * detune * r + 1j * drive * (1.0 - 2.0 * rho)
          - (medium.gamma_se + medium.gamma_coll) * r)
    return drho, dr


def bloch_rhs(s: BlochPointState, e_signal, k: KappaSample, omega_r, delta, medium) -> BlochPointState:
    """Time derivative of one point's state under the RWA Bloch equations."""
    values = (s.rho_ee, s.r_eg, e_signal, k.kappa, k.dkappa_dt, omega_r, delta)
    if not all(np.all(np.isfinite(v)) for v in values):
        raise ValueError("non-finite input to bloch_rhs")
    j1 = mathkit.bessel_j(1, k.kappa)
    drho, dr = _rhs(s.rho_ee, s.r_eg, e_signal, k.dkappa_dt, j1, omega_r, delta, medium)
    return BlochPointState(rho_ee=drho, r_eg=dr)


def rk4_step(s: BlochPointState, dt, rhs) -> BlochPointState:
    """One classical Runge-Kutta step.

    ``rhs(state, frac)`` must return the derivative at stage time
    t + frac*dt, with frac in {0, 1/2, 1}; the caller supplies whatever
    field extrapolation and analytic kappa evaluation the stages need.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    k1 = rhs(s, 0.0)
    k2 = rhs(BlochPointState(s.rho_ee + 0.5 * dt * k1.rho_ee,
                             s.r_eg + 0.5 * dt * k1.r_eg), 0.5)
    k3 = rhs(BlochPointState(s.rho_ee + 0.5 * dt * k2.rho_ee,
                             s.r_eg + 0.5 * dt * k2.r_eg), 0.5)
    k4 = rhs(BlochPointState(s.rho_ee + dt * k3.rho_ee,
                             s.r_eg + dt * k3.r_eg), 1.0)
    return BlochPointState(
        s.rho_ee + dt / 6.0 * (k1.rho_ee + 2.0 * k2.rho_ee + 2.0 * k3.rho_ee + k4.rho_ee),
        s.r_eg + dt / 6.0 * (k1.r_eg + 2.0 * k2.r_eg + 2.0 * k3.r_eg + k4.r_eg),
    )


def advance_arrays(rho, r, e_curr, e_prev, dt, ctx_t, ctx_h, ctx_f, delta, medium):
    """RK4 update of in-sample state arrays from t to t + dt.

    ``e_curr``/``e_prev`` are the signal field at the two most recent
    levels (restricted to sample points); stage fields are linear
    extrapolations from them.  ``ctx_*`` are the stage contexts at t,
    t + dt/2 and t + dt.
    """
    e_half = 1.5 * e_curr - 0.5 * e_prev
    e_full = 2.0 * e_curr - e_prev
    k1 = _rhs(rho, r, e_curr, ctx_t.dkappa, ctx_t.j1, ctx_t.omega_r, delta, medium)
    k2 = _rhs(rho + 0.5 * dt * k1[0], r + 0.5 * dt * k1[1],
              e_half, ctx_h.dkappa, ctx_h.j1, ctx_h.omega_r, delta, medium)
    k3 = _rhs(rho + 0.5 * dt * k2[0], r + 0.5 * dt * k2[1],
              e_half, ctx_h.dkappa, ctx_h.j1, ctx_h.omega_r, delta, medium)
    k4 = _rhs(rho + dt * k3[0], r + dt * k3[1],
              e_full, ctx_f.dkappa, ctx_f.j1, ctx_f.omega_r, delta, medium)
    rho_next = rho + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
    r_next = r + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
    return rho_next, r_next


def advance_bloch_grid(g: BlochGrid, f_curr, f_prev, ctx: DriveContext, dt) -> BlochGrid:
    """Advance every in-sample point independently by one RK4 step.

    ``f_curr``/``f_prev`` are full-grid signal-field levels at t_i and
    t_{i-1}.  Out-of-sample points carry no medium and stay in the
    ground state.  Returns a new grid with the history rotated.
    """
    if len(f_curr) != g.n_points or len(f_prev) != g.n_points:
        raise ValueError("field arrays do not match the grid length")
    if ctx.medium.concentration == 0.0:
        # no molecules, nothing to advance
        return BlochGrid(zs=g.zs, sample=g.sample, rho_ee=g.rho_ee.copy(),
                         r_eg=g.r_eg.copy(), rho_prev=g.rho_ee.copy(),
                         re_r_prev=g.r_eg.real.copy())
    zs = g.zs[g.sample]
    omega = ctx.omega
    delta = ctx.drive.delta
    ctx_t = stage_context(ctx.drive, ctx.medium, omega, zs, ctx.t)
    ctx_h = stage_context(ctx.drive, ctx.medium, omega, zs, ctx.t + 0.5 * dt)
    ctx_f = stage_context(ctx.drive, ctx.medium, omega, zs, ctx.t + dt)
    rho_next, r_next = advance_arrays(
        g.rho_ee[g.sample], g.r_eg[g.sample],
        np.asarray(f_curr)[g.sample], np.asarray(f_prev)[g.sample],
        dt, ctx_t, ctx_h, ctx_f, delta, ctx.medium)
    rho = g.rho_ee.copy()
    r = g.r_eg.copy()
    rho[g.sample] = rho_next
    r[g.sample] = r_next
    return BlochGrid(zs=g.zs, sample=g.sample, rho_ee=rho, r_eg=r,
                     rho_prev=g.rho_ee.copy(), re_r_prev=g.r_eg.real.copy())


def is_physical(rho_ee, r_eg, tol=POPULATION_TOL):
    """Density-matrix positivity under the ansatz |r_eg| = |rho_eg|."""
    rho = np.asarray(rho_ee, dtype=float)
    r2 = np.abs(np.asarray(r_eg)) ** 2
    return bool(np.all(rho >= -tol) and np.all(rho <= 1.0 + tol)
                and np.all(r2 <= rho * (1.0 - rho) + tol))
