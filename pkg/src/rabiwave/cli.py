"""Command-line interface.

Subcommands
-----------
simulate     run a scenario (config file or preset) and write CSVs
stark-map    tabulate the DC-Stark structure (levels/dipoles/transitions)
spectrum     FFT peak report for an existing timeseries CSV
validate     check a config or preset and print the resolved parameters
preset-list  enumerate the built-in presets

Exit codes: 0 success, 2 usage or validation error, 3 numerical
instability.  ``--set key=value`` (repeatable) overrides config keys
after file/preset resolution; ``--threads N`` fans independent sweep
members out to a thread pool (0 = single-threaded reference mode).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, analysis, output, stark, units
from .drive import carrier_omega, rabi_frequency
from .params import (ConfigError, Scenario, apply_overrides, parse_config_text,
                     scenario_to_config, validate_config)
from .presets import PRESETS, get_preset
from .simulation import InstabilityError, run

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INSTABILITY = 3


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except InstabilityError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INSTABILITY
    except (FileNotFoundError, output.CsvFormatError, KeyError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="rabiwave",
        description="Rabi-frequency radiation in 1D polar media: simulate, "
                    "analyze, and tabulate Stark structure.")
    parser.add_argument("--version", action="version", version=f"rabiwave {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sim = sub.add_parser("simulate", help="run a scenario and write CSV outputs")
    _add_scenario_args(sim)
    sim.add_argument("--out", default=".", help="output directory")
    sim.add_argument("--threads", type=int, default=0,
                     help="worker threads for sweep fan-out (0 = reference mode)")
    sim.set_defaults(handler=_cmd_simulate)

    smap = sub.add_parser("stark-map", help="tabulate DC-Stark levels and dipoles")
    smap.add_argument("--config", help="config file with stark.* keys (default: LiH)")
    smap.add_argument("--set", dest="overrides", action="append", default=[],
                      metavar="KEY=VALUE", help="override a stark.* config key")
    smap.add_argument("--out", default=".", help="output directory")
    smap.set_defaults(handler=_cmd_stark_map)

    spec = sub.add_parser("spectrum", help="spectral peak of an existing timeseries CSV")
    spec.add_argument("--input", required=True, help="timeseries CSV produced by simulate")
    spec.add_argument("--set", dest="overrides", action="append", default=[],
                      metavar="KEY=VALUE",
                      help="analysis.gate_start_ns / analysis.gate_end_ns / analysis.gate=full")
    spec.add_argument("--out", default=".", help="output directory")
    spec.set_defaults(handler=_cmd_spectrum)

    val = sub.add_parser("validate", help="validate a config or preset")
    _add_scenario_args(val)
    val.set_defaults(handler=_cmd_validate)

    plist = sub.add_parser("preset-list", help="list built-in presets")
    plist.set_defaults(handler=_cmd_preset_list)
    return parser


def _add_scenario_args(cmd):
    cmd.add_argument("--config", help="flat key = value config file")
    cmd.add_argument("--preset", help="built-in preset name (see preset-list)")
    cmd.add_argument("--set", dest="overrides", action="append", default=[],
                     metavar="KEY=VALUE", help="override a config key")


def _resolve_scenarios(args):
    """Turn --config/--preset/--set into {tag: Scenario}."""
    if bool(args.config) == bool(args.preset):
        raise ConfigError("give exactly one of --config or --preset")
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise FileNotFoundError(f"config file not found: {path}")
        raw = parse_config_text(path.read_text(encoding="utf-8"))
        raw = apply_overrides(raw, args.overrides)
        return {"": validate_config(raw, label=path.stem)}
    built = get_preset(args.preset).build()
    members = {"": built} if isinstance(built, Scenario) else built
    out = {}
    for tag, sc in members.items():
        raw = apply_overrides(scenario_to_config(sc), args.overrides)
        out[tag] = validate_config(raw, label=sc.label)
    return out


def _cmd_simulate(args) -> int:
    scenarios = _resolve_scenarios(args)
    out_root = Path(args.out)

    def one(item):
        tag, sc = item
        result = run(sc)
        out_dir = out_root / tag if tag else out_root
        paths = output.write_timeseries(result, out_dir)
        paths += output.write_snapshots(result, out_dir)
        paths.append(output.write_metadata(result, out_dir))
        return tag, sc, result, paths

    items = sorted(scenarios.items())
    if args.threads > 0 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            done = list(pool.map(one, items))
    else:
        done = [one(item) for item in items]

    for tag, sc, result, paths in done:
        name = sc.label
        print(f"{name}: {result.metadata['n_steps']} steps, "
              f"{result.metadata['wall_time_s']:.1f} s wall")
        for path in paths:
            print(f"  wrote {path}")
    if len(done) > 1:
        _write_sweep_summary(done, out_root)
    return EXIT_OK


def _write_sweep_summary(done, out_root):
    """Per-member FFT peak vs the generalized-frequency prediction."""
    rows = []
    for tag, sc, result, _ in done:
        series = result.probe()
        gate_end = result.times[-1]
        gate = (min(72e-9, 0.6 * gate_end), min(121e-9, gate_end))
        report = analysis.spectrum_peak(result.times, series.e_signal, gate)
        omega = carrier_omega(sc.medium, sc.drive)
        kappa_pk = sc.drive.amplitude * sc.medium.dipole_asymmetry / (units.HBAR * omega)
        omega_r = rabi_frequency(kappa_pk, sc.medium, omega, e_field=sc.drive.amplitude)
        theory = analysis.theoretical_frequency(omega_r, sc.drive.delta) / units.TWO_PI
        rows.append((units.angular_to_hz(sc.drive.delta) / 1e6,
                     report.peak_frequency / 1e9, theory / 1e9))
    text = output._csv(
        ["rabiwave detuning sweep summary",
         "detuning in MHz, frequencies in GHz"],
        ("delta_MHz", "peak_GHz", "theory_GHz"), sorted(rows))
    path = output.atomic_write_text(out_root / "sweep_peaks.csv", text)
    print(f"  wrote {path}")


_STARK_KEYS = {
    "stark.d0_debye": 5.88,
    "stark.b_e_cm1": 7.513,
    "stark.e_dc_start_kv_per_cm": 0.0,
    "stark.e_dc_stop_kv_per_cm": 400.0,
    "stark.e_dc_step_kv_per_cm": 2.0,
}


def _cmd_stark_map(args) -> int:
    cfg = dict(_STARK_KEYS)
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise FileNotFoundError(f"config file not found: {path}")
        raw = parse_config_text(path.read_text(encoding="utf-8"))
        unknown = set(raw) - set(_STARK_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update(raw)
    for item in args.overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, value = (part.strip() for part in item.split("=", 1))
        if key not in _STARK_KEYS:
            raise ConfigError(f"override references unknown config key {key!r}")
        cfg[key] = float(value)

    basis = stark.RotorBasis.from_spectroscopic(cfg["stark.b_e_cm1"], cfg["stark.d0_debye"])
    start, stop = cfg["stark.e_dc_start_kv_per_cm"], cfg["stark.e_dc_stop_kv_per_cm"]
    step = cfg["stark.e_dc_step_kv_per_cm"]
    if stop < start or step <= 0:
        raise ConfigError("stark.e_dc_stop_kv_per_cm: empty field range")
    kv = 1e5  # kV/cm -> V/m
    fields = [start * kv]
    while fields[-1] + step * kv <= stop * kv * (1 + 1e-12):
        fields.append(fields[-1] + step * kv)
    if len(fields) == 1:
        results = [stark.stark_point(basis, fields[0])]
    else:
        results = stark.stark_map(basis, fields)
    paths = output.write_stark_tables(results, args.out)
    last = results[-1]
    gap_thz = last.gap("00", "10") / units.TWO_PI / 1e12
    d_diff = units.si_to_debye(last.dz[last.index("10")] - last.dz[last.index("00")])
    d_eg = units.si_to_debye(last.t_dip[last.index("00"), last.index("10")])
    print(f"E_DC = {last.e_dc / kv:g} kV/cm: gap(|00>-|10>) = {gap_thz:.4f} THz, "
          f"d_ee - d_gg = {d_diff:.3f} D, d_eg = {d_eg:.3f} D")
    for path in paths:
        print(f"  wrote {path}")
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    t, columns = output.read_timeseries(args.input)
    gate = analysis.DEFAULT_GATE
    for item in args.overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, value = (part.strip() for part in item.split("=", 1))
        if key == "analysis.gate":
            if value != "full":
                raise ConfigError("analysis.gate only accepts 'full'")
            gate = (float(t[0]), float(t[-1]))
        elif key == "analysis.gate_start_ns":
            gate = (float(value) * 1e-9, gate[1])
        elif key == "analysis.gate_end_ns":
            gate = (gate[0], float(value) * 1e-9)
        else:
            raise ConfigError(f"override references unknown config key {key!r}")
    signal = columns["e_signal_V_per_m"]
    report = analysis.spectrum_peak(t, signal, gate)
    mask = (t >= report.gate[0]) & (t <= report.gate[1])
    x = signal[mask] - signal[mask].mean()
    spectrum = (analysis.mathkit.dft(x, t[1] - t[0], min_size=analysis.PAD_FACTOR * len(x))
                if np.any(x) else analysis.mathkit.dft(x, t[1] - t[0]))
    path = output.write_spectrum(spectrum, args.out, label=Path(args.input).stem)
    print(f"peak {report.peak_frequency / 1e9:.4f} GHz, amplitude {report.peak_amplitude:.6g}, "
          f"gate {report.gate[0] * 1e9:.3f}-{report.gate[1] * 1e9:.3f} ns, "
          f"refined={report.refined}")
    print(f"  wrote {path}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    for tag, sc in sorted(_resolve_scenarios(args).items()):
        print(f"{sc.label}{f' [{tag}]' if tag else ''}: valid")
        for key, value in sorted(scenario_to_config(sc).items()):
            print(f"  {key} = {value}")
        print(f"  derived: dt = {sc.grid.dt:.6e} s, n_steps = {sc.grid.n_steps}, "
              f"n_points = {sc.grid.n_points}, eta = {sc.grid.eta:g}")
    return EXIT_OK


def _cmd_preset_list(args) -> int:
    width = max(len(name) for name in PRESETS)
    for name in sorted(PRESETS):
        preset = PRESETS[name]
        print(f"{name:<{width}}  [{preset.figure}] {preset.description}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
