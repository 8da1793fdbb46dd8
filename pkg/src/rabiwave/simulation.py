"""Coupled Bloch-Maxwell time loop.

Per step i (field levels live at integer times t_i, Bloch states too):

1. advance the Bloch grid t_i -> t_{i+1} using the field levels
   (i-1, i) with linear extrapolation to the RK4 stage times;
2. assemble the radiation source s_i from the Bloch levels
   (i-1, i, i+1) -- a centered stencil at t_i -- and the analytic
   kappa derivatives at t_i;
3. step the wave equation to level i+1 (the very first step uses the
   one-sided t0 formula with s_0 = 0: the medium starts unexcited);
4. rotate buffers and record probes/snapshots.

The radiation source

    s = -mu0 N (d_ee - d_gg) d2/dt2 rho_ee
        - 2 mu0 N Re{ d_ge [ J_1(kappa) d2/dt2 r_eg
                             + 2 J_1'(kappa) kappa' d/dt r_eg
                             + (J_1''(kappa) kappa'^2 + J_1'(kappa) kappa'') r_eg ] }

is the second time derivative of the low-frequency polarization; with
real co-parallel dipoles only Re r_eg enters.  Points outside the
sample radiate nothing, and the domain edges are source-free.

A run is strictly deterministic: same scenario, same bits.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import bloch, mathkit, units, wavesolver
from .drive import KappaSample, carrier_omega, envelope
from .params import Scenario, scenario_to_config

FIELD_ABORT_LEVEL = 1e9  # V/m; anything above this is a numerical blow-up


class InstabilityError(RuntimeError):
    """Raised when the signal field exceeds the abort level."""

    def __init__(self, step, t, max_field):
        self.step, self.t, self.max_field = step, t, max_field
        super().__init__(
            f"numerical instability: |E_signal| reached {max_field:.3e} V/m "
            f"at step {step} (t = {t * 1e9:.3f} ns)")


@dataclass
class ProbeSeries:
    """Recorded time series at one probe position."""

    z: float
    e_signal: np.ndarray        # V/m
    drive_envelope: np.ndarray  # V/m
    rho_ee: np.ndarray
    re_r_eg: np.ndarray
    im_r_eg: np.ndarray


@dataclass
class RunResult:
    """Everything a run produces: probe series, snapshots, final state."""

    scenario: Scenario
    times: np.ndarray                    # recorded instants (s), monotone
    probes: dict                         # z -> ProbeSeries
    snapshots: list                      # (requested_t, actual_t, field array)
    zs: np.ndarray                       # spatial axis (m)
    final_rho_ee: np.ndarray
    final_r_eg: np.ndarray
    metadata: dict = field(default_factory=dict)

    def probe(self, z=None) -> ProbeSeries:
        if z is None:
            z = self.scenario.probes[0]
        return self.probes[z]


def sample_bounds(grid, medium):
    """Grid index range [j0, j1] covered by the sample interval."""
    x0 = (medium.sample_start - grid.z_min) / grid.dz
    x1 = (medium.sample_end - grid.z_min) / grid.dz
    j0 = max(int(math.ceil(x0 - 1e-6)), 0)
    j1 = min(int(math.floor(x1 + 1e-6)), grid.n_points - 1)
    if j1 <= j0:
        raise ValueError("sample interval does not cover at least two grid points")
    return j0, j1


def _source_kernel(d2rho, d2rr, d1rr, rr, j1, j1p, j1pp, dkappa, d2kappa, medium):
    mu0N = units.MU_0 * medium.concentration
    coherence = (j1 * d2rr + 2.0 * j1p * dkappa * d1rr
                 + (j1pp * dkappa * dkappa + j1p * d2kappa) * rr)
    return -mu0N * (medium.dipole_asymmetry * d2rho + 2.0 * medium.d_eg * coherence)


def source_term(rho_prev, rho_curr, rho_next, re_r_prev, re_r_curr, re_r_next,
                k: KappaSample, medium, dt):
    """Radiation source over the sample points at the central time level.

    The three levels bracket the evaluation time; population and
    coherence are differentiated with the midpoint stencils, kappa
    derivatives come in analytically through ``k``.
    """
    arrays = (rho_prev, rho_curr, rho_next, re_r_prev, re_r_curr, re_r_next)
    if len({np.shape(a) for a in arrays}) != 1:
        raise ValueError("history levels must share one shape")
    d2rho = mathkit.second_derivative_midpoint(rho_prev, rho_curr, rho_next, dt)
    d2rr = mathkit.second_derivative_midpoint(re_r_prev, re_r_curr, re_r_next, dt)
    d1rr = mathkit.first_derivative_midpoint(re_r_prev, re_r_next, dt)
    j1 = mathkit.bessel_j(1, k.kappa)
    j1p = mathkit.bessel_j1_prime(k.kappa)
    j1pp = mathkit.bessel_j1_second(k.kappa)
    return _source_kernel(d2rho, d2rr, d1rr, re_r_curr, j1, j1p, j1pp,
                          k.dkappa_dt, k.d2kappa_dt2, medium)


def effective_detuning(delta, dkappa_dt, e_signal, medium):
    """Diagnostic delta_eff = delta - dkappa/dt - (E_signal/hbar)(d_ee - d_gg)."""
    return delta - dkappa_dt - (e_signal / units.HBAR) * medium.dipole_asymmetry


def effective_detuning_series(result: RunResult, z=None):
    """delta_eff(t) at a probe, reconstructed from the recorded series."""
    from .drive import envelope_dt
    sc = result.scenario
    series = result.probe(z)
    omega = carrier_omega(sc.medium, sc.drive)
    scale = sc.medium.dipole_asymmetry / (units.HBAR * omega)
    dkappa = np.array([envelope_dt(sc.drive, series.z, t) for t in result.times]) * scale
    return effective_detuning(sc.drive.delta, dkappa, series.e_signal, sc.medium)


def run(sc: Scenario) -> RunResult:
    """Integrate a validated scenario to its horizon."""
    grid, medium, drv = sc.grid, sc.medium, sc.drive
    dt = grid.dt
    n_steps = grid.n_steps
    zs = grid.z_axis()
    n = grid.n_points
    j0, j1 = sample_bounds(grid, medium)
    sl = slice(j0, j1 + 1)
    zss = zs[sl]
    omega = carrier_omega(medium, drv)
    delta = drv.delta

    probe_idx = {z: grid.index_of(z) for z in sc.probes}
    snap_steps = {int(round(t / dt)): t for t in sc.snapshot_times}

    stride = sc.record_every
    rec_steps = list(range(0, n_steps, stride))
    if not rec_steps or rec_steps[-1] != n_steps:
        rec_steps.append(n_steps)
    n_rec = len(rec_steps)
    times = np.array(rec_steps, dtype=float) * dt
    rec = {z: ProbeSeries(z=z, e_signal=np.zeros(n_rec), drive_envelope=np.zeros(n_rec),
                          rho_ee=np.zeros(n_rec), re_r_eg=np.zeros(n_rec),
                          im_r_eg=np.zeros(n_rec))
           for z in sc.probes}
    snapshots = []

    rho = np.zeros(len(zss))
    r = np.zeros(len(zss), dtype=complex)
    rho_prev = rho.copy()
    rr_prev = np.zeros(len(zss))
    wave = wavesolver.WaveGrid(spec=grid)
    s_full = np.zeros(n)

    def record(k_rec, i):
        for z, idx in probe_idx.items():
            out = rec[z]
            out.e_signal[k_rec] = wave.f_curr[idx]
            out.drive_envelope[k_rec] = envelope(drv, zs[idx], i * dt)
            if j0 <= idx <= j1:
                out.rho_ee[k_rec] = rho[idx - j0]
                out.re_r_eg[k_rec] = r[idx - j0].real
                out.im_r_eg[k_rec] = r[idx - j0].imag

    started = time.perf_counter()
    ctx_t = bloch.stage_context(drv, medium, omega, zss, 0.0, full=True)
    k_rec = 0
    for i in range(n_steps):
        t = i * dt
        if k_rec < n_rec and rec_steps[k_rec] == i:
            record(k_rec, i)
            k_rec += 1
        if i in snap_steps:
            snapshots.append((snap_steps[i], t, wave.f_curr.copy()))

        ctx_h = bloch.stage_context(drv, medium, omega, zss, t + 0.5 * dt)
        ctx_f = bloch.stage_context(drv, medium, omega, zss, t + dt, full=True)
        if medium.concentration == 0.0:
            rho_next, r_next = rho, r  # no molecules, nothing to advance
        else:
            rho_next, r_next = bloch.advance_arrays(
                rho, r, wave.f_curr[sl], wave.f_prev[sl], dt, ctx_t, ctx_h, ctx_f,
                delta, medium)

        if i == 0:
            # medium unexcited at t0: the true source vanishes
            wavesolver.first_step(wave, s_full)
        else:
            d2rho = mathkit.second_derivative_midpoint(rho_prev, rho, rho_next, dt)
            rr = r.real
            d2rr = mathkit.second_derivative_midpoint(rr_prev, rr, r_next.real, dt)
            d1rr = mathkit.first_derivative_midpoint(rr_prev, r_next.real, dt)
            s_full[sl] = _source_kernel(d2rho, d2rr, d1rr, rr, ctx_t.j1, ctx_t.j1p,
                                        ctx_t.j1pp, ctx_t.dkappa, ctx_t.d2kappa, medium)
            s_full[0] = 0.0
            s_full[-1] = 0.0
            wavesolver.interior_step(wave, s_full)
            wavesolver.boundary_step(wave)

        peak = np.max(np.abs(wave.f_next))
        if not np.isfinite(peak) or peak > FIELD_ABORT_LEVEL:
            raise InstabilityError(i, t, peak)

        rho_prev, rho = rho, rho_next
        rr_prev = r.real
        r = r_next
        wave.rotate()
        ctx_t = ctx_f

    if k_rec < n_rec:
        record(k_rec, n_steps)
    if n_steps in snap_steps:
        snapshots.append((snap_steps[n_steps], n_steps * dt, wave.f_curr.copy()))

    final_rho = np.zeros(n)
    final_r = np.zeros(n, dtype=complex)
    final_rho[sl] = rho
    final_r[sl] = r
    metadata = {
        "label": sc.label,
        "config": scenario_to_config(sc),
        "code_version": _version(),
        "n_steps": n_steps,
        "dt_s": dt,
        "n_points": n,
        "sample_indices": [j0, j1],
        "wall_time_s": time.perf_counter() - started,
    }
    return RunResult(scenario=sc, times=times, probes=rec, snapshots=snapshots,
                     zs=zs, final_rho_ee=final_rho, final_r_eg=final_r,
                     metadata=metadata)


def _version():
    from . import __version__
    return __version__
