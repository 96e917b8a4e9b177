"""Definable topological dynamics over Z and finite groups."""

import json

from . import _core
from ._core import DefdynError, LevelTooCoarse, SchemaError, Unsupported

__version__ = _core.__version__

__all__ = [
    "DefdynError",
    "LevelTooCoarse",
    "SchemaError",
    "Unsupported",
    "capabilities",
    "level_guard",
    "render_text",
    "run_scenario",
    "run_task",
    "set_level_guard",
    "star",
]


def run_scenario(scenario, with_oracle=False):
    """Run a scenario (dict or JSON text). Returns (report, exit_code)."""
    text = scenario if isinstance(scenario, str) else json.dumps(scenario)
    report, code = _core.run_scenario(text, with_oracle)
    return json.loads(report), code


def run_task(group, task, level=None, with_oracle=False, **params):
    """Run one catalog task and return its result.

    Schema problems raise SchemaError; a failing task raises DefdynError
    carrying the reported error kind.
    """
    scenario = {"group": group, "tasks": [{task: params}]}
    if level is not None:
        scenario["level"] = level
    report, code = run_scenario(scenario, with_oracle)
    if code == 2:
        raise SchemaError(report.get("error", "schema error"))
    entry = report["results"][0]
    if "error" in entry:
        raise DefdynError(f"{entry['error_kind']}: {entry['error']}")
    return entry["result"]


def capabilities():
    return json.loads(_core.capabilities())


def render_text(report):
    return _core.render_text(json.dumps(report))


def star(group, p, q):
    """Ellis product p*q of two type points given as dicts."""
    return json.loads(_core.star(json.dumps(group), json.dumps(p), json.dumps(q)))


level_guard = _core.level_guard
set_level_guard = _core.set_level_guard
