"""CSV and metadata serialization.

Every CSV starts with comment lines stating the producing preset/config
and the column units, then a header row.  Files are written atomically
(temp file + rename) so partial outputs never appear under the final
name.  Payloads are deterministic; wall-clock timing lives only in the
metadata JSON.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from . import units
from .simulation import RunResult


def atomic_write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _csv(header_lines, column_names, rows):
    lines = [f"# {line}" for line in header_lines]
    lines.append(",".join(column_names))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, str):
        return v
    return format(float(v), ".12g")


def write_timeseries(result: RunResult, out_dir) -> list:
    """One timeseries_<probe>.csv per probe; returns the written paths."""
    out_dir = Path(out_dir)
    paths = []
    for z, series in result.probes.items():
        rows = zip(result.times * 1e9, series.e_signal, series.drive_envelope,
                   series.rho_ee, series.re_r_eg, series.im_r_eg)
        text = _csv(
            [f"rabiwave timeseries, label={result.scenario.label}, probe_z_m={z:g}",
             "t in ns, fields in V/m, density-matrix entries dimensionless"],
            ("t_ns", "e_signal_V_per_m", "drive_envelope_V_per_m",
             "rho_ee", "re_r_eg", "im_r_eg"),
            rows)
        paths.append(atomic_write_text(out_dir / f"timeseries_{z:g}m.csv", text))
    return paths


def write_snapshots(result: RunResult, out_dir) -> list:
    out_dir = Path(out_dir)
    paths = []
    for requested, actual, field in result.snapshots:
        text = _csv(
            [f"rabiwave snapshot, label={result.scenario.label}, "
             f"t_ns={actual * 1e9:.6g} (requested {requested * 1e9:g})",
             "z in m, field in V/m"],
            ("z_m", "e_signal_V_per_m"),
            zip(result.zs, field))
        paths.append(atomic_write_text(out_dir / f"snapshot_{requested * 1e9:g}ns.csv", text))
    return paths


def write_metadata(result: RunResult, out_dir, extra=None) -> Path:
    payload = dict(result.metadata)
    payload["config"] = {k: list(v) if isinstance(v, tuple) else v
                         for k, v in payload["config"].items()}
    if extra:
        payload.update(extra)
    return atomic_write_text(Path(out_dir) / "run_metadata.json",
                             json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_spectrum(spectrum, out_dir, label="", filename="spectrum.csv") -> Path:
    """Peak-normalized spectrum CSV (frequency_GHz, amplitude_norm)."""
    peak = spectrum.amplitudes.max()
    norm = spectrum.amplitudes / peak if peak > 0 else spectrum.amplitudes
    text = _csv(
        [f"rabiwave spectrum, label={label}",
         "frequency in GHz, amplitude normalized to the dominant peak"],
        ("frequency_GHz", "amplitude_norm"),
        zip(spectrum.frequencies / 1e9, norm))
    return atomic_write_text(Path(out_dir) / filename, text)


def write_stark_tables(results, out_dir, label="stark-map") -> list:
    """stark_levels.csv, stark_dipoles.csv, stark_transitions.csv."""
    out_dir = Path(out_dir)
    kv = 1e-5  # V/m -> kV/cm
    levels, dipoles, transitions = [], [], []
    for point in results:
        e_kv = point.e_dc * kv
        for k, lab in enumerate(point.labels):
            levels.append((e_kv, lab, point.energies[k] / units.PLANCK_H / 1e12))
            dipoles.append((e_kv, lab, units.si_to_debye(point.dz[k])))
        for a in range(10):
            for b in range(a + 1, 10):
                transitions.append((e_kv, point.labels[a], point.labels[b],
                                    units.si_to_debye(point.t_dip[a, b])))
    paths = [
        atomic_write_text(out_dir / "stark_levels.csv", _csv(
            [f"rabiwave stark levels, label={label}",
             "field in kV/cm, energy in THz (E/h)"],
            ("e_dc_kV_per_cm", "label", "energy_THz"), levels)),
        atomic_write_text(out_dir / "stark_dipoles.csv", _csv(
            [f"rabiwave stark permanent dipoles, label={label}",
             "field in kV/cm, <d_z> in Debye"],
            ("e_dc_kV_per_cm", "label", "dz_debye"), dipoles)),
        atomic_write_text(out_dir / "stark_transitions.csv", _csv(
            [f"rabiwave stark transition dipoles, label={label}",
             "field in kV/cm, <a|d_z|b> in Debye, keyed by label pairs"],
            ("e_dc_kV_per_cm", "label_a", "label_b", "t_dip_debye"), transitions)),
    ]
    return paths


class CsvFormatError(ValueError):
    """Raised when an input CSV is missing columns or malformed."""


def read_timeseries(path):
    """Read a timeseries CSV back as (t_seconds, column dict)."""
    path = Path(path)
    names = None
    rows = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if names is None:
                names = [c.strip() for c in line.split(",")]
                continue
            parts = line.split(",")
            if len(parts) != len(names):
                raise CsvFormatError(f"{path}:{lineno}: expected {len(names)} columns, "
                                     f"got {len(parts)}")
            try:
                rows.append([float(p) for p in parts])
            except ValueError as err:
                raise CsvFormatError(f"{path}:{lineno}: {err}") from None
    if names is None or not rows:
        raise CsvFormatError(f"{path}: no data rows")
    required = {"t_ns", "e_signal_V_per_m"}
    missing = required - set(names)
    if missing:
        raise CsvFormatError(f"{path}: missing columns {sorted(missing)}")
    data = np.asarray(rows, dtype=float)
    columns = {name: data[:, k] for k, name in enumerate(names)}
    return columns.pop("t_ns") * 1e-9, columns
