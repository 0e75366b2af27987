"""JSON schemas for every serialized report; checked on load."""

import jsonschema

_number = {"type": "number"}
_nullable_number = {"type": ["number", "null"]}

SCHEMAS = {
    "harmonic_series": {
        "type": "object",
        "required": ["a0", "harmonics"],
        "properties": {
            "a0": _number,
            "harmonics": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [{"type": "integer", "minimum": 1}, _number, _number],
                    "minItems": 3,
                    "maxItems": 3,
                },
            },
        },
    },
    "circle_grid": {
        "type": "object",
        "required": ["m", "values"],
        "properties": {
            "m": {"type": "integer", "minimum": 4},
            "values": {"type": "array", "items": _number},
        },
    },
    "bound_certificate": {
        "type": "object",
        "required": ["grid_min", "lipschitz", "spacing", "certified_lower_bound"],
        "properties": {
            "grid_min": _number,
            "lipschitz": {"type": "number", "minimum": 0},
            "spacing": {"type": "number", "exclusiveMinimum": 0},
            "curvature": _nullable_number,
            "argmin": _nullable_number,
            "certified_lower_bound": _number,
        },
    },
    "resonance_report": {
        "type": "object",
        "required": ["cos", "sin", "passes"],
        "properties": {
            "cos": _number,
            "sin": _number,
            "tolerance": _number,
            "omega": _number,
            "passes": {"type": "boolean"},
        },
    },
    "supporting_form": {
        "type": "object",
        "required": ["a", "b", "margin"],
        "properties": {
            "a": _number,
            "b": _number,
            "margin": {"$ref": "#/$defs/bound_certificate"},
        },
    },
    "margin_report": {
        "type": "object",
        "required": ["margin", "alpha", "beta"],
        "properties": {
            "margin": _number,
            "alpha": _number,
            "beta": _number,
            "grid_m": {"type": "integer", "minimum": 4},
            "certificate": {"oneOf": [{"type": "null"}, {"$ref": "#/$defs/bound_certificate"}]},
        },
    },
    "nonexistence_certificate": {
        "type": "object",
        "required": ["j", "k", "sum"],
        "properties": {
            "j": {"type": "integer", "minimum": 0, "multipleOf": 2},
            "k": {"type": "integer", "minimum": 1},
            "sum": {"type": "number", "exclusiveMaximum": 0},
            "omega": {"type": "integer", "minimum": 1},
            "theta1": _number,
            "theta2": _number,
        },
    },
    "positive_solution": {
        "type": "object",
        "required": ["solution", "form", "certificate"],
        "properties": {
            "solution": {"$ref": "#/$defs/harmonic_series"},
            "form": {"$ref": "#/$defs/supporting_form"},
            "certificate": {"$ref": "#/$defs/bound_certificate"},
            "residual": _number,
        },
    },
    "counterexample_bundle": {
        "type": "object",
        "required": ["omega", "variant", "u_star", "h", "h_positivity", "resonance", "nonexistence"],
        "properties": {
            "omega": {"type": "integer", "minimum": 3},
            "variant": {"enum": ["trigpoly", "piecewise"]},
            "epsilon": _nullable_number,
            "u_star": {"oneOf": [{"$ref": "#/$defs/harmonic_series"}, {"$ref": "#/$defs/circle_grid"}]},
            "h": {"$ref": "#/$defs/harmonic_series"},
            "h_positivity": {"$ref": "#/$defs/bound_certificate"},
            "resonance": {"$ref": "#/$defs/resonance_report"},
            "nonexistence": {"$ref": "#/$defs/nonexistence_certificate"},
            "margin": {"$ref": "#/$defs/margin_report"},
        },
    },
    "symmetry_report": {
        "type": "object",
        "required": ["omega", "evenness_defect", "half_turn_defect", "harmonic1", "harmonic2"],
        "properties": {
            "omega": {"type": "integer", "minimum": 3},
            "variant": {"enum": ["trigpoly", "piecewise"]},
            "evenness_defect": {"type": "number", "minimum": 0},
            "half_turn_defect": _nullable_number,
            "harmonic1": {
                "type": "object",
                "required": ["cos", "sin", "vanishing_expected"],
                "properties": {"cos": _number, "sin": _number, "vanishing_expected": {"type": "boolean"}},
            },
            "harmonic2": {
                "type": "object",
                "required": ["cos", "sin", "vanishes"],
                "properties": {"cos": _number, "sin": _number, "vanishes": {"type": "boolean"}},
            },
        },
    },
    "exploration_report": {
        "type": "object",
        "required": ["seed", "trials", "degree", "accepted", "candidates", "most_negative_margin"],
        "properties": {
            "seed": {"type": "integer"},
            "trials": {"type": "integer", "minimum": 0},
            "degree": {"type": "integer", "minimum": 0, "maximum": 16},
            "accepted": {"type": "integer", "minimum": 0},
            "most_negative_margin": _nullable_number,
            "candidates": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["trial", "accepted", "u_cand", "h_certified_min"],
                    "properties": {
                        "trial": {"type": "integer"},
                        "accepted": {"type": "boolean"},
                        "u_cand": {"$ref": "#/$defs/harmonic_series"},
                        "h_certified_min": _number,
                        "margin": _nullable_number,
                        "alpha": _nullable_number,
                        "beta": _nullable_number,
                    },
                },
            },
        },
    },
}


def schema(name: str) -> dict:
    return {**SCHEMAS[name], "$defs": SCHEMAS}


def validate(data, name: str) -> None:
    """Raise ``jsonschema.ValidationError`` if ``data`` does not match."""
    jsonschema.validate(data, schema(name), cls=jsonschema.Draft202012Validator)
