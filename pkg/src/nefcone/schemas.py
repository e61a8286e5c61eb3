"""JSON Schemas for every document the library reads or writes."""

from __future__ import annotations

import jsonschema

from .errors import PresentationError

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
    ]
}

SCALAR = {
    "type": "object",
    "properties": {"a": _RATIONAL, "b": _RATIONAL, "d": {"type": "integer"}},
    "required": ["a", "b", "d"],
    "additionalProperties": False,
}

_END = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["Z", "cm"]},
        "D": {"type": "integer"},
    },
    "required": ["kind"],
    "additionalProperties": False,
}

_TENSOR = {"oneOf": [{"type": "integer"}, {"type": "array", "items": {"$ref": "#/$defs/tensor"}}]}

VARIETY = {
    "$defs": {"tensor": _TENSOR},
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "product": {
                    "type": "object",
                    "properties": {
                        "factors": {
                            "type": "array",
                            "minItems": 1,
                            "items": {
                                "type": "object",
                                "properties": {
                                    "id": {"type": "string"},
                                    "end": _END,
                                    "mult": {"type": "integer", "minimum": 1},
                                    "dim": {"type": "integer", "minimum": 1},
                                    "degree": {"type": "integer", "minimum": 1},
                                },
                                "required": ["id", "end", "mult"],
                                "additionalProperties": False,
                            },
                        }
                    },
                    "required": ["factors"],
                    "additionalProperties": False,
                }
            },
            "required": ["product"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "abstract": {
                    "type": "object",
                    "properties": {
                        "rank": {"type": "integer", "minimum": 1},
                        "dim": {"type": "integer", "minimum": 1},
                        "tensor": {"$ref": "#/$defs/tensor"},
                        "ample": {"type": "array", "items": _RATIONAL},
                        "simple": {"type": "boolean"},
                    },
                    "required": ["rank", "dim", "tensor", "ample"],
                    "additionalProperties": False,
                }
            },
            "required": ["abstract"],
            "additionalProperties": False,
        },
    ],
}

_ENTRY = {
    "type": "object",
    "properties": {"a": _RATIONAL, "b": _RATIONAL},
    "required": ["a"],
    "additionalProperties": False,
}

CLASS = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "matrix": {"type": "array", "items": {"type": "array", "items": _ENTRY}}
            },
            "required": ["matrix"],
            "additionalProperties": False,
        },
        {
            "properties": {"coords": {"type": "array", "items": _RATIONAL}},
            "required": ["coords"],
            "additionalProperties": False,
        },
    ],
}

_INT_VECTOR = {"type": "array", "items": {"type": "integer"}}

CONE = {
    "type": "object",
    "properties": {
        "rank": {"type": "integer", "minimum": 1},
        "rays": {"type": "array", "items": _INT_VECTOR},
    },
    "required": ["rank", "rays"],
    "additionalProperties": False,
}

SEMIGROUP = {
    "type": "object",
    "properties": {
        "generators": {"type": "array", "items": _INT_VECTOR},
        "index": {"type": "integer", "minimum": 1},
    },
    "required": ["generators"],
    "additionalProperties": False,
}

VERDICT = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "polyhedral": {"const": True},
                "basis": {"type": "array", "items": CLASS},
            },
            "required": ["polyhedral", "basis"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "polyhedral": {"const": False},
                "witness": {"enum": ["prop2", "prop3"]},
                "factor": {"type": "string"},
            },
            "required": ["polyhedral", "witness", "factor"],
            "additionalProperties": False,
        },
    ],
}

WITNESS = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "kind": {"const": "prop3"},
                "m": {"type": "integer", "minimum": 1},
                "class": CLASS,
                "charpoly": _INT_VECTOR,
                "divergence": {"type": "integer"},
            },
            "required": ["kind", "m", "class", "charpoly", "divergence"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "kind": {"const": "prop2"},
                "s": SCALAR,
                "minpoly": _INT_VECTOR,
                "q": _RATIONAL,
                "approx": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
            },
            "required": ["kind", "s", "minpoly", "q", "approx"],
            "additionalProperties": False,
        },
    ],
}

PREDICATE = {
    "type": "object",
    "properties": {
        "nef": {"type": "boolean"},
        "ample": {"type": "boolean"},
        "intersections": {"type": "array", "items": _RATIONAL},
    },
    "minProperties": 2,
    "maxProperties": 2,
    "required": ["intersections"],
    "additionalProperties": False,
}

SCHEMAS = {
    "scalar": SCALAR,
    "variety": VARIETY,
    "class": CLASS,
    "cone": CONE,
    "semigroup": SEMIGROUP,
    "verdict": VERDICT,
    "witness": WITNESS,
    "predicate": PREDICATE,
}


def validate(doc, kind: str) -> None:
    """Raise :class:`PresentationError` unless ``doc`` matches the named schema."""
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        raise PresentationError(f"invalid {kind} document: {exc.message}") from None
