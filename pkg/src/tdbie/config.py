"""Scenario configuration: schema, validation and object construction.

A scenario is a JSON object. Validation uses :mod:`jsonschema`; the first
violation is reported as a :class:`ConfigError` whose path names the field
(``density[1].profile.power`` style).
"""

import hashlib
import json

import jsonschema

from . import __version__, profiles
from .boundary_fourier import FourierDensity, Geometry
from .errors import ConfigError
from .laplace_ops import FIELD_KINDS, OPERATOR_KINDS

__all__ = ["SCHEMA", "load_config", "validate", "scenario_hash", "build_geometry", "build_density",
           "build_profile"]

FAMILIES = ["single_layer", "double_layer", "ntd", "dtn"]

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_INT = {"type": "integer"}
_COMPLEX = {"oneOf": [_NUM, {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}]}

_PROFILE = {
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {"enum": ["poly_exp", "sine_power", "raised_cosine", "zero"]},
        "coeffs": {"type": "array", "items": _NUM, "minItems": 1},
        "rate": {"type": "number", "minimum": 0},
        "onset": {"type": "number", "minimum": 0},
        "power": {"type": "integer", "minimum": 1},
        "omega": _POS,
        "lobes": {"type": "integer", "minimum": 1},
        "width": _POS,
    },
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"type": {"const": "poly_exp"}}}, "then": {"required": ["coeffs"]}},
        {"if": {"properties": {"type": {"const": "sine_power"}}}, "then": {"required": ["power"]}},
        {"if": {"properties": {"type": {"const": "raised_cosine"}}}, "then": {"required": ["width"]}},
    ],
}

_DENSITY = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["mode", "profile"],
        "properties": {"mode": _INT, "profile": _PROFILE, "amplitude": _COMPLEX},
        "additionalProperties": False,
    },
}

_KINDS = {"type": "array", "items": {"enum": list(OPERATOR_KINDS) + [k for k in FIELD_KINDS if k not in
                                                                      OPERATOR_KINDS]},
          "uniqueItems": True}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "id": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "geometry": {
            "type": "object",
            "properties": {"dimension": {"enum": [2, 3]}, "radius": _POS, "R": _POS},
            "additionalProperties": False,
        },
        "density": _DENSITY,
        "phi": _DENSITY,
        "kinds": _KINDS,
        "dt": _POS,
        "T_end": _POS,
        "method": {"enum": ["BDF1", "BDF2"]},
        "dt_ladder": {"type": "array", "items": _POS, "minItems": 1},
        "resolution": {
            "type": "object",
            "properties": {"panel": _POS, "order": {"type": "integer", "minimum": 2}},
            "additionalProperties": False,
        },
        "constants": {
            "type": "object",
            "properties": {"samples": {"type": "integer", "minimum": 1},
                           "n_max": {"type": "integer", "minimum": 0}, "safety": _POS},
            "additionalProperties": False,
        },
        "symbols": {
            "type": "object",
            "properties": {
                "modes": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "s": {"type": "array", "items": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}},
                "radius": _POS,
                "side": {"enum": ["-", "+"]},
            },
            "additionalProperties": False,
        },
        "direct": {
            "type": "object",
            "properties": {
                "points": {"type": "array", "items": {"type": "array", "items": _NUM, "minItems": 2,
                                                      "maxItems": 3}, "minItems": 1},
                "quad_order": {"type": "integer", "minimum": 4},
                "time_order": {"type": "integer", "minimum": 2},
            },
            "additionalProperties": False,
        },
        "wave": {
            "type": "object",
            "properties": {
                "basis": {
                    "type": "object",
                    "properties": {"type": {"enum": ["disk", "annulus"]}, "rho": _POS, "a": _POS,
                                   "max_angular": {"type": "integer", "minimum": 0},
                                   "max_radial": {"type": "integer", "minimum": 1}},
                    "additionalProperties": False,
                },
                "forcing": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["label", "profile"],
                        "properties": {
                            "label": {"type": "array", "items": _INT, "minItems": 3, "maxItems": 3},
                            "profile": _PROFILE,
                            "amplitude": _NUM,
                        },
                        "additionalProperties": False,
                    },
                },
                "samples": {"type": "integer", "minimum": 2},
                "solution": {"enum": ["strong", "weak"]},
            },
            "additionalProperties": False,
        },
        "bounds": {
            "type": "object",
            "properties": {"families": {"type": "array", "items": {"enum": FAMILIES},
                                        "uniqueItems": True},
                           "stride": {"type": "integer", "minimum": 1}},
            "additionalProperties": False,
        },
        "propagation": {
            "type": "object",
            "properties": {"radius": _POS},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

DEFAULTS = {
    "id": "scenario",
    "seed": 0,
    "geometry": {"dimension": 2, "radius": 1.0, "R": 1.5},
    "density": [],
    "kinds": [],
    "dt": 0.05,
    "T_end": 10.0,
    "method": "BDF2",
    "dt_ladder": [0.02, 0.01, 0.005],
    "resolution": {"panel": 0.25, "order": 8},
    "constants": {"samples": 64, "n_max": 24, "safety": 1.5},
    "symbols": {"modes": [0, 1, 2], "s": [[1.0, 0.0], [1.0, 1.0], [0.5, 4.0]]},
    "direct": {"points": [[2.0, 0.0]], "quad_order": 64, "time_order": 24},
    "wave": {"basis": {"type": "disk", "rho": 4.5, "a": 1.0, "max_angular": 6, "max_radial": 6},
             "forcing": [], "samples": 41, "solution": "strong"},
    "bounds": {"families": list(FAMILIES), "stride": 1},
    "propagation": {"radius": 2.0},
}


def _path(err):
    out = ""
    for p in err.absolute_path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


def validate(cfg):
    """Validate ``cfg`` against :data:`SCHEMA`; raise :class:`ConfigError` on the first violation."""
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(cfg), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        raise ConfigError(errors[0].message, _path(errors[0]))
    return cfg


def _merge(base, over):
    out = dict(base)
    for k, v in over.items():
        out[k] = _merge(base[k], v) if isinstance(v, dict) and isinstance(base.get(k), dict) else v
    return out


def load_config(path=None, seed=None):
    """Read, validate and complete a scenario; ``path=None`` gives the defaults."""
    cfg = {}
    if path is not None:
        try:
            with open(path) as fh:
                cfg = json.load(fh)
        except OSError as exc:
            raise ConfigError(str(exc), str(path)) from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON ({exc.msg}, line {exc.lineno})", str(path)) from None
    validate(cfg)
    cfg = _merge(DEFAULTS, cfg)
    if seed is not None:
        cfg["seed"] = int(seed)
    g = cfg["geometry"]
    if not g["R"] > g["radius"]:
        raise ConfigError("must exceed geometry.radius", "geometry.R")
    return cfg


def scenario_hash(subcommand, cfg, tolerance):
    payload = json.dumps({"subcommand": subcommand, "config": cfg, "tolerance": tolerance,
                          "version": __version__}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def build_geometry(cfg):
    g = cfg["geometry"]
    return Geometry(int(g["dimension"]), float(g["radius"]))


def build_profile(spec, path="profile"):
    kind = spec["type"]
    onset = float(spec.get("onset", 0.0))
    try:
        if kind == "poly_exp":
            return profiles.poly_exp(spec["coeffs"], spec.get("rate", 0.0), onset)
        if kind == "sine_power":
            return profiles.sine_power(spec["power"], spec.get("omega", 1.0), onset, spec.get("lobes"))
        if kind == "raised_cosine":
            return profiles.raised_cosine(spec["width"], onset, spec.get("power", 1))
        return profiles.zero(onset)
    except ValueError as exc:
        raise ConfigError(str(exc), path) from None


def _amplitude(a):
    return complex(a[0], a[1]) if isinstance(a, list) else complex(a)


def build_density(cfg, key="density"):
    geom = build_geometry(cfg)
    terms = []
    for i, t in enumerate(cfg[key]):
        terms.append((t["mode"], build_profile(t["profile"], f"{key}[{i}].profile"),
                      _amplitude(t.get("amplitude", 1.0))))
    try:
        return FourierDensity(terms, geom)
    except ValueError as exc:
        raise ConfigError(str(exc), key) from None
