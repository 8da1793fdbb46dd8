"""Shared fixtures: the expensive coupled runs are executed once per session."""

import pytest

import rabiwave as rw
from rabiwave.params import validate_config
from rabiwave.presets import baseline_config, gaussian_pulse_config

_CACHE = {}


def cached_run(key, factory):
    if key not in _CACHE:
        _CACHE[key] = rw.run(factory())
    return _CACHE[key]


def _preset(name):
    return lambda: rw.get_preset(name).build()


@pytest.fixture(scope="session")
def baseline_run():
    """fig1-baseline: resonant ramp, 121 ns, snapshot at 30 ns."""
    return cached_run("fig1-baseline", _preset("fig1-baseline"))


@pytest.fixture(scope="session")
def detuned460_run():
    return cached_run("fig1c-detuned", _preset("fig1c-detuned"))


@pytest.fixture(scope="session")
def detuned657_run():
    return cached_run("det657", lambda: validate_config(
        baseline_config(**{"drive.detuning_hz": 657e6}), label="det657"))


@pytest.fixture(scope="session")
def gauss12_run():
    return cached_run("fig5-gauss-12ns", _preset("fig5-gauss-12ns"))


@pytest.fixture(scope="session")
def gauss36_run():
    return cached_run("fig5-gauss-36ns", _preset("fig5-gauss-36ns"))


@pytest.fixture(scope="session")
def gauss72_run():
    return cached_run("gauss72", lambda: validate_config(
        gaussian_pulse_config(72e-9), label="gauss-72ns"))


@pytest.fixture(scope="session")
def lih_run():
    return cached_run("fig6-lih", _preset("fig6-lih"))


@pytest.fixture(scope="session")
def gamma_coll_only_run():
    return cached_run("fig2-gamma-a", _preset("fig2-gamma-a"))


@pytest.fixture(scope="session")
def gamma_se_only_run():
    return cached_run("fig2-gamma-b", _preset("fig2-gamma-b"))


@pytest.fixture(scope="session")
def backaction_dense_run():
    return cached_run("fig3-backaction-14", _preset("fig3-backaction-14"))


@pytest.fixture(scope="session")
def backaction_dilute_run():
    return cached_run("fig3-backaction-12", _preset("fig3-backaction-12"))


@pytest.fixture(scope="session")
def baseline_refined_run():
    """Baseline with dz and dt both halved (eta stays 1)."""
    return cached_run("baseline-dz0.5mm", lambda: validate_config(
        baseline_config(**{"grid.dz_m": 0.5e-3}), label="baseline-dz0.5mm"))
