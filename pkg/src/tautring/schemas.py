"""JSON schemas for the ``--format json`` output of every CLI command."""
from __future__ import annotations

_INT = {"type": "integer"}
_BOOL = {"type": "boolean"}
_STR = {"type": "string"}

_RELATION = {
    "type": "object",
    "required": ["relation", "bidegree"],
    "properties": {
        "label": _STR,
        "relation": _STR,
        "bidegree": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["codim", "level"],
                    "properties": {"codim": _INT, "level": _INT},
                    "additionalProperties": False,
                },
            ]
        },
    },
    "additionalProperties": False,
}

DIMS = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "dims",
    "type": "object",
    "required": ["genus", "cells"],
    "properties": {
        "genus": _INT,
        "cells": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "dim_R", "dim_I", "dim_cR", "relations"],
                "properties": {
                    "i": _INT,
                    "j": _INT,
                    "dim_R": _INT,
                    "dim_I": _INT,
                    "dim_cR": _INT,
                    "relations": {"type": "array", "items": _STR},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

SL2 = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "sl2",
    "type": "object",
    "required": ["genus", "level", "summands"],
    "properties": {
        "genus": _INT,
        "level": _INT,
        "summands": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["highest_weight", "multiplicity", "anchor_i"],
                "properties": {"highest_weight": _INT, "multiplicity": _INT, "anchor_i": _INT},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

CONJECTURE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "conjecture",
    "type": "object",
    "required": ["max_genus", "strong", "all_pass", "genera"],
    "properties": {
        "max_genus": _INT,
        "strong": _BOOL,
        "all_pass": _BOOL,
        "genera": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["g", "pass", "cells", "mismatches"],
                "properties": {
                    "g": _INT,
                    "pass": _BOOL,
                    "cells": _INT,
                    "mismatches": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["i", "j", "predicted", "computed"],
                            "properties": {
                                "i": _INT,
                                "j": _INT,
                                "predicted": _INT,
                                "computed": _INT,
                                "strong": _BOOL,
                            },
                            "additionalProperties": False,
                        },
                    },
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

PSI = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "psi",
    "type": "object",
    "required": ["r", "max_genus", "zeros"],
    "properties": {
        "r": _INT,
        "max_genus": _INT,
        "zeros": {"type": "array", "items": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}},
    },
    "additionalProperties": False,
}

RELATIONS = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "relations",
    "type": "object",
    "required": ["g", "r", "d", "relations"],
    "properties": {
        "g": _INT,
        "r": _INT,
        "d": _INT,
        "relations": {"type": "array", "items": _RELATION},
        "closure": {
            "type": "object",
            "required": ["iterations", "stable", "relations"],
            "properties": {
                "iterations": _INT,
                "stable": _BOOL,
                "relations": {"type": "array", "items": _RELATION},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

SCHEMAS = {"dims": DIMS, "sl2": SL2, "conjecture": CONJECTURE, "psi": PSI, "relations": RELATIONS}
