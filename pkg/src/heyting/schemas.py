"""JSON Schemas for every document the command line emits."""

_INT_LIST = {"type": "array", "items": {"type": "integer", "minimum": 0}}

POSET = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["n", "covers", "labels"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "covers": {"type": "array", "items": {**_INT_LIST, "minItems": 2, "maxItems": 2}},
        "labels": {"type": "array", "items": {"type": "string"}},
    },
}

ALGEBRA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["size", "leq", "implies", "bot", "top"],
    "properties": {
        "size": {"type": "integer", "minimum": 1},
        "leq": {"type": "array", "items": {"type": "array", "items": {"type": "boolean"}}},
        "implies": {"type": "array", "items": _INT_LIST},
        "bot": {"type": "integer", "minimum": 0},
        "top": {"type": "integer", "minimum": 0},
    },
}

WITNESS = {
    "type": ["object", "null"],
    "required": ["upset", "map"],
    "properties": {"upset": _INT_LIST, "map": _INT_LIST},
}

VERDICT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["answer", "evidence"],
    "properties": {
        "answer": {"enum": ["yes", "no"]},
        "evidence": {"type": "array", "items": {"type": "object"}},
        "depth_bound": {"type": "integer", "minimum": 1},
    },
}

REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["kind", "answer", "routes", "witnesses", "cross_check"],
    "properties": {
        "kind": {"type": "string"},
        "answer": {"enum": ["yes", "no"]},
        "routes": {"type": "object", "additionalProperties": {"type": "boolean"}},
        "witnesses": {"type": "object"},
        "cross_check": {"type": "boolean"},
    },
}

VALIDITY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["formula", "valid", "refutation"],
    "properties": {
        "formula": {"type": "string"},
        "valid": {"type": "boolean"},
        "refutation": {"type": ["object", "null"], "additionalProperties": {"type": "string"}},
    },
}

JANKOV = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["target", "valid", "witness", "nodes"],
    "properties": {
        "target": {"type": "string"},
        "valid": {"type": "boolean"},
        "witness": WITNESS,
        "nodes": {"type": "integer", "minimum": 0},
    },
}

SHOW = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["points", "depth", "width", "rooted", "upsets", "spectrum"],
    "properties": {
        "points": {"type": "integer", "minimum": 0},
        "depth": {"type": "integer", "minimum": 0},
        "width": {"type": "integer", "minimum": 0},
        "rooted": {"type": "boolean"},
        "upsets": {"type": ["integer", "null"]},
        "spectrum": POSET,
    },
}

DECOMPOSITION = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["answer"],
    "properties": {
        "answer": {"enum": ["yes", "no"]},
        "blocks": {
            "type": "array",
            "items": {"type": "object", "required": ["kind", "points"],
                      "properties": {"kind": {"enum": ["singleton", "pair-block"]}, "points": _INT_LIST}},
        },
        "level": {"type": "integer"},
        "reason": {"type": "string"},
    },
}

TRUNCATION = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["case", "N", "poset", "copies", "map"],
    "properties": {
        "case": {"enum": ["P1", "P2", "P3", "P4"]},
        "N": {"type": "integer", "minimum": 4},
        "poset": POSET,
        "copies": {"type": "integer", "minimum": 1},
        "map": _INT_LIST,
    },
}
