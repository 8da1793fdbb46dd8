"""Validated parameter records and config-file ingestion.

A config is a flat key/value text file (``section.key = value``, ``#``
comments).  Keys carry their units in the name; validation converts
everything to the internal SI conventions (see :mod:`rabiwave.units`)
and enforces the physical invariants.  Unknown keys are errors, as are
violated invariants; both raise :class:`ConfigError` naming the key.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import units
from .drive import ARCTAN_RAMP, CONSTANT, GAUSSIAN_PULSE, DriveSpec, gaussian_alpha_from_fwhm


class ConfigError(ValueError):
    """Raised when a config record is malformed or violates an invariant."""


@dataclass(frozen=True)
class MediumParams:
    """Two-level medium constants, all in SI.

    Dipole moments are real and co-parallel.  ``gamma_se`` and
    ``gamma_coll`` are decay rates in 1/s (config-file values in Hz get
    multiplied by 2*pi).  The medium occupies [sample_start, sample_end]
    with uniform number density ``concentration``.
    """

    omega0: float         # angular transition frequency (rad/s)
    d_ee: float           # excited-state permanent dipole (C*m)
    d_gg: float           # ground-state permanent dipole (C*m)
    d_eg: float           # transition dipole (C*m)
    gamma_se: float       # spontaneous-emission rate (1/s)
    gamma_coll: float     # collisional relaxation rate (1/s)
    concentration: float  # number density N (1/m^3)
    sample_start: float = 0.0  # m
    sample_end: float = 0.53   # m

    def __post_init__(self):
        if not (self.omega0 > 0.0):
            raise ConfigError("medium.nu0_hz: transition frequency must be positive")
        if self.d_eg == 0.0:
            raise ConfigError("medium.d_eg: transition dipole must be nonzero")
        if self.gamma_se < 0.0:
            raise ConfigError("medium.gamma_se_hz: negative rate")
        if self.gamma_coll < 0.0:
            raise ConfigError("medium.gamma_coll_hz: negative rate")
        if self.concentration < 0.0:
            raise ConfigError("medium.concentration_per_cm3: negative concentration")
        if not self.sample_end > self.sample_start:
            raise ConfigError("medium.sample_length_m: sample_end must exceed sample_start")
        for name in ("omega0", "d_ee", "d_gg", "d_eg", "gamma_se", "gamma_coll", "concentration"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"medium.{name}: non-finite value")

    @property
    def dipole_asymmetry(self) -> float:
        """d_ee - d_gg: the permanent-dipole difference driving the signal."""
        return self.d_ee - self.d_gg


@dataclass(frozen=True)
class GridSpec:
    """1D space-time discretization.

    eta = c*dt/dz is the Courant number; eta = 1 is the dispersion-free
    "magic step" and the default.  eta > 1 is unconditionally unstable
    and rejected.
    """

    z_min: float   # m
    z_max: float   # m
    dz: float      # m
    dt: float      # s
    eta: float     # Courant number, = c*dt/dz
    n_steps: int   # total time steps

    def __post_init__(self):
        if self.dz <= 0.0 or self.dt <= 0.0:
            raise ConfigError("grid.dz_m: steps must be positive")
        if self.z_max <= self.z_min:
            raise ConfigError("grid.z_max_m: z_max must exceed z_min")
        eta_actual = units.C_LIGHT * self.dt / self.dz
        if abs(eta_actual - self.eta) > 1e-12 * self.eta:
            raise ConfigError("grid.eta: eta must equal c*dt/dz")
        if self.eta > 1.0 + 1e-12:
            raise ConfigError(f"grid.eta: Courant number exceeds 1 (eta = {self.eta:g})")
        if not self.eta > 0.0:
            raise ConfigError("grid.eta: Courant number must be positive")
        if self.n_steps < 1:
            raise ConfigError("run.t_end_s: horizon shorter than one time step")

    @classmethod
    def from_config(cls, z_min, z_max, dz, eta, t_end):
        """Derive dt from the requested Courant number and step count from t_end."""
        dt = eta * dz / units.C_LIGHT
        n_steps = max(1, math.ceil(t_end / dt - 1e-9))
        return cls(z_min=z_min, z_max=z_max, dz=dz, dt=dt,
                   eta=units.C_LIGHT * dt / dz, n_steps=n_steps)

    @property
    def n_points(self) -> int:
        return int(round((self.z_max - self.z_min) / self.dz)) + 1

    @property
    def magic_step(self) -> bool:
        return abs(self.eta - 1.0) < 1e-12

    def z_axis(self):
        return self.z_min + self.dz * np.arange(self.n_points)

    def index_of(self, z) -> int:
        """Nearest grid index to position z (must lie inside the domain)."""
        if not (self.z_min - 0.5 * self.dz <= z <= self.z_max + 0.5 * self.dz):
            raise ConfigError(f"position {z} m outside grid [{self.z_min}, {self.z_max}]")
        return min(max(int(round((z - self.z_min) / self.dz)), 0), self.n_points - 1)


@dataclass(frozen=True)
class Scenario:
    """A fully validated simulation setup."""

    medium: MediumParams
    grid: GridSpec
    drive: DriveSpec
    probes: tuple = (0.53,)        # probe z positions (m)
    snapshot_times: tuple = ()     # snapshot times (s)
    record_every: int = 1          # step stride for time series
    label: str = "custom"

    def __post_init__(self):
        for z in self.probes:
            if not self.grid.z_min <= z <= self.grid.z_max:
                raise ConfigError(f"run.probes_m: probe {z} m outside the grid")
        horizon = self.grid.n_steps * self.grid.dt
        for t in self.snapshot_times:
            if not 0.0 <= t <= horizon * (1 + 1e-12):
                raise ConfigError(f"run.snapshot_times_s: snapshot {t} s outside the run horizon")
        if self.record_every < 1:
            raise ConfigError("run.record_every: stride must be >= 1")
        if not (self.grid.z_min <= self.medium.sample_start
                and self.medium.sample_end <= self.grid.z_max):
            raise ConfigError("grid.z_min_m: grid must contain the sample interval")
        if (self.medium.sample_start <= self.grid.z_min
                or self.medium.sample_end >= self.grid.z_max):
            warnings.warn("sample touches the domain edge; boundary sources are forced to zero",
                          stacklevel=2)


# Recognized config keys.  Dipoles accept either *_Cm or *_debye spellings.
_KEYS = {
    "medium.nu0_hz", "medium.d_ee_Cm", "medium.d_ee_debye", "medium.d_gg_Cm",
    "medium.d_gg_debye", "medium.d_eg_Cm", "medium.d_eg_debye",
    "medium.gamma_se_hz", "medium.gamma_coll_hz", "medium.concentration_per_cm3",
    "medium.sample_length_m",
    "grid.z_min_m", "grid.z_max_m", "grid.dz_m", "grid.eta",
    "run.t_end_s", "run.probes_m", "run.snapshot_times_s", "run.record_every",
    "drive.shape", "drive.amplitude_v_per_cm", "drive.alpha", "drive.z0_m",
    "drive.detuning_hz", "drive.gaussian_a",
}

_DEFAULTS = {
    "grid.z_min_m": -0.5,
    "grid.z_max_m": 3.2,
    "grid.dz_m": 1e-3,
    "grid.eta": 1.0,
    "run.t_end_s": 121e-9,
    "run.probes_m": (0.53,),
    "run.snapshot_times_s": (),
    "run.record_every": 1,
    "drive.shape": "arctan",
    "drive.z0_m": -5.3,
    "drive.detuning_hz": 0.0,
    "medium.gamma_se_hz": "auto",
}


def parse_config_text(text):
    """Parse flat ``key = value`` lines into a dict of raw values.

    Values become int or float when they look like numbers, tuples when
    comma-separated, and strings otherwise.  ``#`` starts a comment.
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = _parse_value(value)
    return out


def _parse_value(text):
    if "," in text:
        return tuple(_parse_value(part.strip()) for part in text.split(",") if part.strip())
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def _as_float(raw, key):
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key}: non-finite value")
    return value


def _as_floats(raw, key):
    if isinstance(raw, (int, float)):
        raw = (raw,)
    return tuple(_as_float(v, key) for v in raw)


def validate_config(raw, label="custom"):
    """Validate a raw config mapping and build a :class:`Scenario`.

    Applies defaults, converts lab units to internal SI (Hz -> rad/s,
    V/cm -> V/m, Debye -> C*m), and enforces every invariant.  Pure and
    deterministic: the same mapping always yields bit-identical output.
    """
    cfg = dict(raw)
    unknown = set(cfg) - _KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, default in _DEFAULTS.items():
        cfg.setdefault(key, default)

    def require(key):
        if key not in cfg:
            raise ConfigError(f"missing required config key {key}")
        return cfg[key]

    def dipole(name):
        si_key, db_key = f"medium.{name}_Cm", f"medium.{name}_debye"
        if si_key in cfg and db_key in cfg:
            raise ConfigError(f"{si_key}: give either {si_key} or {db_key}, not both")
        if si_key in cfg:
            return _as_float(cfg[si_key], si_key)
        if db_key in cfg:
            return units.debye_to_si(_as_float(cfg[db_key], db_key))
        raise ConfigError(f"missing required config key {si_key} (or {db_key})")

    omega0 = units.hz_to_angular(_as_float(require("medium.nu0_hz"), "medium.nu0_hz"))
    d_ee, d_gg, d_eg = dipole("d_ee"), dipole("d_gg"), dipole("d_eg")
    gamma_se_raw = cfg["medium.gamma_se_hz"]
    if isinstance(gamma_se_raw, str):
        if gamma_se_raw != "auto":
            raise ConfigError("medium.gamma_se_hz: expected a rate in Hz or 'auto'")
        gamma_se = units.weisskopf_wigner_rate(d_eg, omega0)
    else:
        gamma_se = units.hz_to_angular(_as_float(gamma_se_raw, "medium.gamma_se_hz"))
    gamma_coll = units.hz_to_angular(
        _as_float(require("medium.gamma_coll_hz"), "medium.gamma_coll_hz"))
    length = _as_float(require("medium.sample_length_m"), "medium.sample_length_m")
    medium = MediumParams(
        omega0=omega0, d_ee=d_ee, d_gg=d_gg, d_eg=d_eg,
        gamma_se=gamma_se, gamma_coll=gamma_coll,
        concentration=_as_float(require("medium.concentration_per_cm3"),
                                "medium.concentration_per_cm3") * 1e6,
        sample_start=0.0, sample_end=length,
    )

    grid = GridSpec.from_config(
        z_min=_as_float(cfg["grid.z_min_m"], "grid.z_min_m"),
        z_max=_as_float(cfg["grid.z_max_m"], "grid.z_max_m"),
        dz=_as_float(cfg["grid.dz_m"], "grid.dz_m"),
        eta=_as_float(cfg["grid.eta"], "grid.eta"),
        t_end=_as_float(cfg["run.t_end_s"], "run.t_end_s"),
    )

    shape = _DRIVE_SHAPES.get(str(cfg["drive.shape"]).lower())
    if shape is None:
        raise ConfigError(f"drive.shape: unknown shape {cfg['drive.shape']!r}")
    amplitude = units.v_per_cm_to_v_per_m(
        _as_float(require("drive.amplitude_v_per_cm"), "drive.amplitude_v_per_cm"))
    if "drive.alpha" in cfg and "drive.gaussian_a" in cfg:
        raise ConfigError("drive.alpha: give either drive.alpha or drive.gaussian_a, not both")
    if shape == GAUSSIAN_PULSE and "drive.gaussian_a" in cfg:
        a = _as_float(cfg["drive.gaussian_a"], "drive.gaussian_a")
        if a <= 0.0:
            raise ConfigError("drive.gaussian_a: pulse-width multiplier must be positive")
        alpha = gaussian_alpha_from_fwhm(a * 12e-9)
    elif shape != CONSTANT:
        if "drive.alpha" not in cfg:
            raise ConfigError("missing required config key drive.alpha")
        alpha = _as_float(cfg["drive.alpha"], "drive.alpha")
    else:
        alpha = 0.0
    drive = DriveSpec(
        shape=shape, amplitude=amplitude, alpha=alpha,
        z0=_as_float(cfg["drive.z0_m"], "drive.z0_m"),
        delta=units.hz_to_angular(_as_float(cfg["drive.detuning_hz"], "drive.detuning_hz")),
    )

    return Scenario(
        medium=medium, grid=grid, drive=drive,
        probes=_as_floats(cfg["run.probes_m"], "run.probes_m"),
        snapshot_times=_as_floats(cfg["run.snapshot_times_s"], "run.snapshot_times_s"),
        record_every=int(cfg["run.record_every"]),
        label=label,
    )


_DRIVE_SHAPES = {
    "arctan": ARCTAN_RAMP, "arctan_ramp": ARCTAN_RAMP, "arctanramp": ARCTAN_RAMP,
    "gaussian": GAUSSIAN_PULSE, "gaussian_pulse": GAUSSIAN_PULSE,
    "gaussianpulse": GAUSSIAN_PULSE,
    "constant": CONSTANT,
}


def apply_overrides(cfg, overrides):
    """Apply CLI ``key=value`` override strings onto a raw config dict."""
    out = dict(cfg)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, value = (part.strip() for part in item.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"override references unknown config key {key!r}")
        out[key] = _parse_value(value)
    return out


def scenario_to_config(sc: Scenario) -> dict:
    """Express a validated scenario back in config-file units."""
    medium, grid, drive = sc.medium, sc.grid, sc.drive
    cfg = {
        "medium.nu0_hz": units.angular_to_hz(medium.omega0),
        "medium.d_ee_Cm": medium.d_ee,
        "medium.d_gg_Cm": medium.d_gg,
        "medium.d_eg_Cm": medium.d_eg,
        "medium.gamma_se_hz": units.angular_to_hz(medium.gamma_se),
        "medium.gamma_coll_hz": units.angular_to_hz(medium.gamma_coll),
        "medium.concentration_per_cm3": medium.concentration / 1e6,
        "medium.sample_length_m": medium.sample_end,
        "grid.z_min_m": grid.z_min, "grid.z_max_m": grid.z_max,
        "grid.dz_m": grid.dz, "grid.eta": grid.eta,
        "run.t_end_s": grid.n_steps * grid.dt,
        "run.probes_m": sc.probes,
        "run.snapshot_times_s": sc.snapshot_times,
        "run.record_every": sc.record_every,
        "drive.shape": drive.shape,
        "drive.amplitude_v_per_cm": drive.amplitude / 100.0,
        "drive.alpha": drive.alpha,
        "drive.z0_m": drive.z0,
        "drive.detuning_hz": units.angular_to_hz(drive.delta),
    }
    return cfg
