"""Run configuration: a JSON file checked against :data:`CONFIG_SCHEMA`.

Relative output paths resolve against the directory holding the config.
"""
from __future__ import annotations

import copy
import json
import os
from dataclasses import dataclass
from typing import List, Optional

import jsonschema

from .errors import ConfigError
from .families import Solution, build_solution
from .fieldio import GridSpec
from .helmholtz import bessel_vortex, plane_wave, superpose
from .model import SWEEP_PARAMETERS, FamilySpec, PhysicalParams, validate
from .verify import DEFAULT_TOLERANCES, SamplingPlan

_NUMBER = {"type": "number"}
_PAIR = {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["family"],
    "properties": {
        "physical": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"beta": _NUMBER, "H": _NUMBER, "V": _NUMBER},
        },
        "family": {
            "type": "object",
            "additionalProperties": False,
            "required": ["id"],
            "properties": {
                "id": {"type": "integer", "minimum": 1, "maximum": 9},
                "n": {"type": "integer"},
                "P": _NUMBER,
                "k_z": _NUMBER,
                "K_r": _NUMBER,
            },
        },
        "modes": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["type"],
                "properties": {"type": {"enum": ["plane_wave", "bessel_vortex"]}},
                "allOf": [
                    {
                        "if": {"properties": {"type": {"const": "plane_wave"}}},
                        "then": {
                            "additionalProperties": False,
                            "properties": {
                                "type": True,
                                "kappa": _NUMBER,
                                "amplitude": _NUMBER,
                                "phase": _NUMBER,
                                "direction": _NUMBER,
                            },
                        },
                    },
                    {
                        "if": {"properties": {"type": {"const": "bessel_vortex"}}},
                        "then": {
                            "additionalProperties": False,
                            "properties": {
                                "type": True,
                                "kappa": _NUMBER,
                                "m": {"type": "integer", "minimum": 0, "maximum": 50},
                                "amplitude": _NUMBER,
                                "phase": _NUMBER,
                                "center": _PAIR,
                            },
                        },
                    },
                ],
            },
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "required": ["nx", "ny", "nz", "x_range", "y_range"],
            "properties": {
                "nx": {"type": "integer", "minimum": 2},
                "ny": {"type": "integer", "minimum": 2},
                "nz": {"type": "integer", "minimum": 2},
                "x_range": _PAIR,
                "y_range": _PAIR,
                "z_range": _PAIR,
                "t": _NUMBER,
            },
        },
        "sampling": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "n_points": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0},
                "fd_step": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 0.1},
                "bounds": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {"t": _PAIR, "x": _PAIR, "y": _PAIR},
                },
                "tolerances": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {k: {"type": "number", "exclusiveMinimum": 0} for k in DEFAULT_TOLERANCES},
                },
            },
        },
        "sweep": {
            "type": "object",
            "additionalProperties": False,
            "required": ["parameter", "range"],
            "properties": {
                "parameter": {"enum": list(SWEEP_PARAMETERS)},
                "range": _PAIR,
                "samples": {"type": "integer", "minimum": 2},
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "report": {"type": "string"},
                "csv": {"type": "string"},
                "vtk": {"type": "string"},
                "sweep_csv": {"type": "string"},
            },
        },
    },
}

DEFAULT_SWEEP_SAMPLES = 1000


@dataclass
class RunConfig:
    physical: PhysicalParams
    family: FamilySpec
    modes: List[dict]
    grid: Optional[dict]
    sampling: dict
    sweep: Optional[dict]
    output: dict
    base_dir: str
    raw: dict

    def resolved(self) -> dict:
        """Fully resolved configuration, echoed into reports."""
        out = copy.deepcopy(self.raw)
        out["physical"] = {"beta": self.physical.beta, "H": self.physical.H, "V": self.physical.V}
        out["sampling"] = self.plan_kwargs()
        out["output"] = dict(self.output)
        return out

    def plan_kwargs(self) -> dict:
        s = self.sampling
        tol = dict(DEFAULT_TOLERANCES)
        tol.update(s.get("tolerances", {}))
        return {
            "n_points": s.get("n_points", 1000),
            "seed": s.get("seed", 0),
            "fd_step": s.get("fd_step", 1e-3),
            "bounds": s.get("bounds"),
            "tolerances": tol,
        }

    def plan(self) -> SamplingPlan:
        return SamplingPlan(**self.plan_kwargs())

    def solution(self) -> Solution:
        spec = validate(self.family, self.physical)
        if not self.modes:
            raise ConfigError("config needs a non-empty 'modes' list")
        modes = [_make_mode(m, spec.kappa) for m in self.modes]
        mode = modes[0] if len(modes) == 1 else superpose(modes)
        return build_solution(spec, self.physical, mode)

    def grid_spec(self) -> GridSpec:
        if self.grid is None:
            raise ConfigError("config has no 'grid' section")
        g = self.grid
        return GridSpec(
            g["nx"],
            g["ny"],
            g["nz"],
            tuple(g["x_range"]),
            tuple(g["y_range"]),
            tuple(g.get("z_range", (0.0, self.physical.H))),
            g.get("t", 0.0),
        )

    def path(self, key) -> Optional[str]:
        return self.output.get(key)


def _make_mode(m, kappa):
    k = m.get("kappa", kappa)
    if m["type"] == "plane_wave":
        return plane_wave(k, m.get("amplitude", 1.0), m.get("phase", 0.0), m.get("direction", 0.0))
    return bessel_vortex(k, m.get("m", 0), m.get("amplitude", 1.0), m.get("phase", 0.0), tuple(m.get("center", (0.0, 0.0))))


def _error_path(err) -> str:
    parts = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)
    return "config" + parts


def parse_config(data: dict, base_dir: str = ".") -> RunConfig:
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    err = jsonschema.exceptions.best_match(validator.iter_errors(data))
    if err is not None:
        raise ConfigError(f"{_error_path(err)}: {err.message}")
    fam = data["family"]
    family = FamilySpec(fam["id"], n=fam.get("n"), P=fam.get("P", 0.0), k_z=fam.get("k_z"), K_r=fam.get("K_r"))
    physical = PhysicalParams(**data.get("physical", {}))
    output = {k: os.path.normpath(os.path.join(base_dir, v)) for k, v in data.get("output", {}).items()}
    return RunConfig(
        physical=physical,
        family=family,
        modes=data.get("modes", []),
        grid=data.get("grid"),
        sampling=data.get("sampling", {}),
        sweep=data.get("sweep"),
        output=output,
        base_dir=base_dir,
        raw=data,
    )


def load_config(path) -> RunConfig:
    """Read and validate a config file.

    Raises ``ConfigError`` naming the line (syntax) or field (schema) at fault.
    """
    path = os.fspath(path)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_config(data, os.path.dirname(os.path.abspath(path)))
