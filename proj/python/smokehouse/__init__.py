"""Python bindings for the smoked-fish machine simulator.

Scenario arguments accept a preset name, a config given as a dict, JSON
text or a path to a JSON file, and a list of ``dotted.path=value``
overrides.
"""
import json
import os

from . import _core
from ._core import ConfigError, InvalidInput, NoEquilibrium, cli, mechanics_report, pid_step, presets

__all__ = [
    "ConfigError",
    "InvalidInput",
    "NoEquilibrium",
    "cli",
    "equilibrium",
    "mechanics_report",
    "pid_step",
    "presets",
    "run",
    "scenario",
    "summarize",
    "tune",
    "validate",
]


def _config_text(config):
    if config is None:
        return ""
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, os.PathLike) or (isinstance(config, str) and os.path.isfile(config)):
        with open(config, encoding="utf-8") as f:
            return f.read()
    return str(config)


def scenario(preset="", config=None, overrides=()):
    """Fully populated scenario as a dict."""
    return json.loads(_core.scenario_json(preset, _config_text(config), list(overrides)))


def validate(preset="", config=None, overrides=()):
    return _core.validate(preset, _config_text(config), list(overrides))


def run(preset="", config=None, overrides=()):
    """Simulate one batch; the result holds the summary and ``telemetry_csv``."""
    return _core.run(preset, _config_text(config), list(overrides))


def summarize(telemetry_csv, preset="", config=None):
    return _core.summarize(telemetry_csv, preset, _config_text(config))


def equilibrium(preset="", **inputs):
    """Steady state with the named actuators on, e.g. ``equilibrium(heater=True)``."""
    return _core.equilibrium(preset, inputs)


def tune(preset="", phase="cook", budget=200):
    return _core.tune(preset, phase, budget)
