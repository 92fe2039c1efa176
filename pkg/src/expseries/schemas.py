"""JSON schemas for CLI inputs and outputs."""
from __future__ import annotations

import math

import jsonschema

_num = {"type": "number"}
_ext = {"oneOf": [{"type": "number"}, {"const": "inf"}]}
_pair = {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}
_pairs = {"type": "array", "items": _pair}
_arcs = {"type": "array", "items": _pair}

DOMAIN = {
    "type": "object",
    "properties": {
        "halfplanes": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"angle": _num, "bound": _ext},
                "required": ["angle", "bound"],
                "additionalProperties": False,
            },
        },
        "discs": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"cx": _num, "cy": _num, "r": {"type": "number", "exclusiveMinimum": 0}},
                "required": ["cx", "cy", "r"],
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

EXPONENTS = {
    "type": "object",
    "properties": {
        "values": _pairs,
        "tail": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "properties": {
                        "kind": {"const": "ray"},
                        "angle": _num,
                        "ratio": {"type": "number", "exclusiveMinimum": 1},
                        "start": {"type": "number", "exclusiveMinimum": 0},
                    },
                    "required": ["kind", "angle", "ratio", "start"],
                    "additionalProperties": False,
                },
            ]
        },
    },
    "additionalProperties": False,
}

NODES = {
    "type": "object",
    "properties": {
        "nodes": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {"mu": _num, "m": {"type": "integer", "minimum": 1}},
                "required": ["mu", "m"],
                "additionalProperties": False,
            },
        },
        "limit": _num,
    },
    "required": ["nodes"],
    "additionalProperties": False,
}

HERMITE_DATA = {
    "type": "object",
    "properties": {
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "k": {"type": "integer", "minimum": 0},
                    "j": {"type": "integer", "minimum": 0},
                    "b": _pair,
                },
                "required": ["k", "j", "b"],
                "additionalProperties": False,
            },
        }
    },
    "required": ["entries"],
    "additionalProperties": False,
}

EXPPOLY = {
    "type": "object",
    "properties": {
        "terms": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {"omega": _num, "coeffs": {"type": "array", "items": _pair, "minItems": 1}},
                "required": ["omega", "coeffs"],
                "additionalProperties": False,
            },
        }
    },
    "required": ["terms"],
    "additionalProperties": False,
}

ANGLE = {
    "type": "object",
    "properties": {"beta": _num, "alpha": {"type": "number", "minimum": 0}},
    "required": ["beta", "alpha"],
    "additionalProperties": False,
}

COEFFS = {
    "type": "object",
    "properties": {
        "rule": {"enum": ["geometric", "exp", "sqrt"]},
        "A": {"type": "number", "exclusiveMinimum": 0},
        "q": {"type": "number", "exclusiveMinimum": 0},
        "sigma": _num,
    },
    "required": ["rule"],
    "additionalProperties": False,
}

_pos = {"type": "number", "exclusiveMinimum": 0}
_posint = {"type": "integer", "minimum": 1}


def _obj(props: dict, required: list[str]) -> dict:
    return {"type": "object", "properties": props, "required": required, "additionalProperties": False}


INPUTS = {
    "criterion": _obj(
        {"domain": DOMAIN, "exponents": EXPONENTS, "nodes": NODES, "tol": _pos, "grid": _posint,
         "radius": {"type": "number", "minimum": 0}, "cluster_tol": _pos},
        ["domain", "exponents", "nodes"],
    ),
    "hull": _obj({"domain": DOMAIN, "directions": _arcs, "grid": _posint}, ["domain", "directions"]),
    "contact": _obj({"domain": DOMAIN, "point": _pair, "tol": _pos}, ["domain", "point"]),
    "thin": _obj({"exponents": EXPONENTS, "angle": ANGLE, "count": _posint}, ["exponents", "angle"]),
    "interpolate": _obj(
        {"exponents": {"type": "array", "items": _pair, "minItems": 1, "uniqueItems": True}, "nodes": NODES, "data": HERMITE_DATA, "pivot_tol": _pos, "scale": {"type": "boolean"}},
        ["exponents", "nodes", "data"],
    ),
    "gproduct": _obj(
        {"zeros": EXPONENTS, "truncation": _posint, "points": _pairs, "upto": _posint},
        ["zeros", "truncation"],
    ),
    "bounds": _obj(
        {"poly": EXPPOLY, "angle": ANGLE, "r": _pos, "r_max": _pos, "r_min": _pos, "samples": _posint,
         "sharp": {"type": "boolean"}, "left_r": _pos},
        ["poly", "angle", "r_max"],
    ),
    "converge": _obj(
        {"exponents": EXPONENTS, "coeffs": COEFFS, "points": _pairs,
         "box": {"type": "array", "items": _num, "minItems": 4, "maxItems": 4}},
        ["exponents", "coeffs"],
    ),
}

_check = {
    "type": "object",
    "properties": {"ok": {"type": "boolean"}, "worst_ratio": _num, "constant_estimate": _num},
    "required": ["ok", "worst_ratio", "constant_estimate"],
}

OUTPUTS = {
    "criterion": _obj(
        {"solvable": {"type": "boolean"}, "witness": {"type": ["number", "null"]}, "P": _arcs, "T": _arcs,
         "hull_member": {"type": "boolean"}, "confidence": {"enum": ["exact-tail", "prefix-estimated"]}},
        ["solvable", "witness", "P", "T", "hull_member", "confidence"],
    ),
    "hull": _obj({"hull": DOMAIN, "support": {"type": "array", "items": {"type": "array", "items": _ext}}},
                 ["hull"]),
    "contact": _obj({"T": _arcs, "gap": {"type": "array", "items": {"type": "array", "items": _ext}}}, ["T"]),
    "thin": _obj({"exponents": EXPONENTS, "separated": {"type": "boolean"}}, ["exponents", "separated"]),
    "interpolate": _obj(
        {"exponents": _pairs, "coefficients": _pairs, "residual": _num, "condition": _ext},
        ["exponents", "coefficients", "residual", "condition"],
    ),
    "gproduct": _obj(
        {"values": {"type": "array", "items": _obj({"z": _pair, "G": {"type": "array", "items": _ext},
                                                    "tail_bound": _num}, ["z", "G", "tail_bound"])},
         "terms": {"type": "array", "items": _num}, "condensation_index": _num},
        ["values"],
    ),
    "bounds": _obj(
        {"zero_free_radius": _num, "certified": {"type": "boolean"}, "r": _num, "sector": _check,
         "left": _check, "exponent": _num},
        ["zero_free_radius", "certified", "r", "sector", "exponent"],
    ),
    "converge": _obj(
        {"points": {"type": "array", "items": _obj(
            {"z": _pair, "converges": {"type": "boolean"}, "margin": _num, "borderline": {"type": "boolean"}},
            ["z", "converges", "margin", "borderline"])},
         "grid": _obj({"box": {"type": "array", "items": _num}, "n": _posint,
                       "converges": {"type": "array", "items": {"type": "array", "items": {"enum": [0, 1]}}}},
                      ["box", "n", "converges"])},
        ["points"],
    ),
}


def validate_input(command: str, data) -> None:
    jsonschema.validate(data, INPUTS[command])


def validate_output(command: str, data) -> None:
    jsonschema.validate(data, OUTPUTS[command])


def jsonable(obj):
    """Replace non-finite floats by ``"inf"``/``"-inf"`` and tuples by lists."""
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    x = float(obj)
    if math.isnan(x):
        raise ValueError("NaN in output")
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x
