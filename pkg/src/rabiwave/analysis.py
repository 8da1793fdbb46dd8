"""Post-processing of simulated signals.

Spectral peak extraction over a time gate (zero-padded FFT plus
three-point parabolic refinement in log amplitude), the generalized
population-oscillation frequency, and spatial beat measurement on
snapshots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import mathkit

DEFAULT_GATE = (72e-9, 121e-9)  # stationary window of the step-drive runs (s)
PAD_FACTOR = 4                  # zero-padding beyond the next power of two


@dataclass(frozen=True)
class PeakReport:
    """Dominant spectral component of a gated time series."""

    peak_frequency: float  # Hz
    peak_amplitude: float  # same units as the series
    gate: tuple            # (t_start, t_end) actually used (s)
    refined: bool          # parabolic interpolation applied


def spectrum_peak(t, values, gate=DEFAULT_GATE) -> PeakReport:
    """Locate the dominant spectral peak of ``values(t)`` inside ``gate``.

    The gated series is mean-subtracted, transformed with 4x zero
    padding, and the maximum bin is refined by parabolic interpolation
    of log amplitude.  A constant series yields a zero-amplitude report.
    """
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if t.shape != values.shape or t.ndim != 1:
        raise ValueError("series must be matching 1-D arrays")
    steps = np.diff(t)
    if len(steps) < 1 or np.any(steps <= 0):
        raise ValueError("time axis must be strictly increasing")
    dt = steps[0]
    if np.max(np.abs(steps - dt)) > 1e-6 * dt:
        raise ValueError("non-uniform sampling")
    t_start, t_end = gate
    if t_start >= t_end:
        raise ValueError("empty gate")
    mask = (t >= t_start - 1e-15) & (t <= t_end + 1e-15)
    m = int(np.count_nonzero(mask))
    if m < 64:
        raise ValueError(f"gate [{t_start}, {t_end}] holds only {m} samples (need >= 64)")
    x = values[mask]
    scale = float(np.max(np.abs(x)))
    x = x - x.mean()
    if not np.any(np.abs(x) > 1e-12 * max(scale, 1e-300)):
        return PeakReport(peak_frequency=0.0, peak_amplitude=0.0,
                          gate=(float(t[mask][0]), float(t[mask][-1])), refined=False)
    spec = mathkit.dft(x, dt, min_size=PAD_FACTOR * len(x))
    k = int(np.argmax(spec.amplitudes[1:])) + 1  # mean removed; skip DC
    freq = spec.frequencies[k]
    amp = spec.amplitudes[k]
    refined = False
    if 1 <= k < len(spec.amplitudes) - 1:
        trio = spec.amplitudes[k - 1:k + 2]
        if np.all(trio > 0.0):
            la = np.log(trio)
            denom = la[0] - 2.0 * la[1] + la[2]
            if denom < 0.0:
                shift = 0.5 * (la[0] - la[2]) / denom
                freq = (k + shift) * spec.df
                amp = math.exp(la[1] - 0.25 * (la[0] - la[2]) * shift)
                refined = True
    return PeakReport(peak_frequency=float(freq), peak_amplitude=float(amp),
                      gate=(float(t[mask][0]), float(t[mask][-1])), refined=refined)


def theoretical_frequency(omega_r, delta):
    """Population-oscillation frequency Omega = 2 sqrt(Omega_R^2 + delta^2/4).

    Omega_R is the probability-amplitude oscillation rate; populations
    run at twice that pace, hence the prefactor.  Valid for negligible
    relaxation.
    """
    return 2.0 * math.sqrt(omega_r**2 + 0.25 * delta**2)


def carrier_peaks(x, values):
    """Sample the envelope of an oscillating series at its |carrier| maxima.

    Returns (x_peaks, |values| at peaks); the carrier must oscillate,
    i.e. produce at least one interior local maximum of |values|.
    """
    x = np.asarray(x, dtype=float)
    mag = np.abs(np.asarray(values, dtype=float))
    if len(mag) < 3:
        raise ValueError("series too short")
    interior = (mag[1:-1] >= mag[:-2]) & (mag[1:-1] > mag[2:]) & (mag[1:-1] > 0)
    idx = np.flatnonzero(interior) + 1
    return x[idx], mag[idx]


def spatial_beat_period(z, values):
    """Full period of the sinusoidal envelope modulating an in-sample snapshot.

    The envelope is sampled at the carrier's |field| maxima; successive
    envelope minima mark half a period of a sign-flipping sinusoidal
    envelope, so the returned period is twice their mean spacing.
    Returns None ("period exceeds sample") when fewer than two interior
    envelope minima exist.
    """
    z_pk, env = carrier_peaks(z, values)
    if len(env) < 3:
        raise ValueError("non-oscillatory input: too few carrier peaks")
    node = (env[1:-1] < env[:-2]) & (env[1:-1] <= env[2:])
    nodes_z = []
    for k in np.flatnonzero(node) + 1:
        # near a sign-flip node the squared envelope is parabolic; its
        # vertex localizes the node below the carrier-peak spacing
        e2 = env[k - 1:k + 2] ** 2
        denom = e2[0] - 2.0 * e2[1] + e2[2]
        if denom > 0.0:
            shift = 0.5 * (e2[0] - e2[2]) / denom
            zk = z_pk[k] + shift * 0.5 * (z_pk[k + 1] - z_pk[k - 1])
        else:
            zk = z_pk[k]
        nodes_z.append(zk)
    if len(nodes_z) < 2:
        return None
    return 2.0 * float(np.mean(np.diff(nodes_z)))


def envelope_extrema_count(t, values, t_start, prominence=0.05):
    """Count local extrema of the signal envelope after ``t_start``.

    The envelope is the carrier-peak sequence; an extremum counts only
    if the envelope swings by more than ``prominence`` of its maximum
    around it, which discards sampling ripple.  Used to tell smooth
    buildup from back-action modulation.
    """
    t = np.asarray(t, dtype=float)
    mask = t >= t_start
    _, env = carrier_peaks(t[mask], np.asarray(values, dtype=float)[mask])
    if len(env) < 5:
        return 0
    floor = prominence * env.max()
    count = 0
    direction = 0
    ref = env[0]  # running extreme since the last counted turn
    for value in env[1:]:
        if direction == 0:
            if value > ref + floor:
                direction = 1
                ref = value
            elif value < ref - floor:
                direction = -1
                ref = value
        elif direction == 1:
            if value > ref:
                ref = value
            elif value < ref - floor:  # ref was a local maximum
                count += 1
                direction = -1
                ref = value
        else:
            if value < ref:
                ref = value
            elif value > ref + floor:  # ref was a local minimum
                count += 1
                direction = 1
                ref = value
    return count
