"""JSON Schemas for every ``--json`` payload emitted by the command line."""
from __future__ import annotations

_INT_MAP = {"type": "object", "additionalProperties": {"type": "integer"}}

_LEVEL = {
    "type": "object",
    "required": ["n", "dynkin_union", "components", "total"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "dynkin_union": {"type": "boolean"},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["vertices", "type", "roots"],
                "properties": {
                    "vertices": {"type": "array", "items": {"type": "string"}},
                    "type": {"type": "string"},
                    "roots": {"type": ["integer", "null"]},
                },
            },
        },
        "total": {"type": ["integer", "null"]},
    },
}

CLASSIFY = {
    "type": "object",
    "required": ["discrete", "reason", "graph_type", "normalized_quiver"],
    "properties": {
        "discrete": {"type": "boolean"},
        "reason": {"enum": ["ADE", "AtildeUnequalTotals", "AtildeEqualTotals", "GraphOther",
                            "DegreeZeroPartNotDynkin"]},
        "graph_type": {"type": "string"},
        "normalized_quiver": {"type": "string"},
        "totals": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "witness_hint": {"type": "string"},
        "levels": {"type": "array", "items": _LEVEL},
        "consistent": {"type": ["boolean", "null"]},
    },
}

TERMINAL = {
    "type": "object",
    "required": ["tag", "params", "iso"],
    "properties": {
        "tag": {"enum": ["CaseA", "CaseB", "CaseC", "KroneckerDegZero", None]},
        "label": {"type": "string"},
        "params": {"type": "array", "items": {"type": "integer"}},
        "opposite": {"type": "boolean"},
        "iso": {"type": "object", "additionalProperties": {"type": "string"}},
        "witness_available": {"type": "boolean"},
    },
}

REDUCE = {
    "type": "object",
    "required": ["start", "steps", "terminal"],
    "properties": {
        "start": {"type": "string"},
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["op", "args", "after"],
                "properties": {
                    "op": {"enum": ["Delete", "Contract", "MutateSink", "MutateSource", "TakeOpposite",
                                    "ApplyPotential"]},
                    "args": {"type": ["string", "object", "null"]},
                    "after": {"type": "string"},
                },
            },
        },
        "terminal": TERMINAL,
        "notes": {"type": "array", "items": {"type": "string"}},
        "used_search": {"type": "boolean"},
    },
}

QTILDE = {
    "type": "object",
    "required": ["n", "vertices", "arrows", "components", "total"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "vertices": {"type": "array", "items": {"type": "string"}},
        "arrows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "source", "target"],
                "properties": {"name": {"type": "string"}, "source": {"type": "string"},
                               "target": {"type": "string"}},
            },
        },
        "components": _LEVEL["properties"]["components"],
        "total": {"type": ["integer", "null"]},
        "oracle": {
            "type": "object",
            "required": ["field", "caps", "brute_force", "root_prediction", "agree"],
            "properties": {
                "field": {"type": "string"},
                "caps": _INT_MAP,
                "brute_force": {"type": "integer"},
                "root_prediction": {"type": "integer"},
                "agree": {"type": "boolean"},
            },
        },
    },
}

PSMC = {
    "type": "object",
    "required": ["case", "params", "field", "lambdas", "passed", "table", "violation"],
    "properties": {
        "case": {"type": "string"},
        "params": {"type": "array", "items": {"type": "integer"}},
        "field": {"type": "string"},
        "lambdas": {"type": "array", "items": {"type": "string"}},
        "passed": {"type": "boolean"},
        "table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "hom0", "hom_neg", "ext1_neg"],
                "properties": {
                    "i": {"type": "integer"}, "j": {"type": "integer"}, "hom0": {"type": "integer"},
                    "hom_neg": _INT_MAP, "ext1_neg": _INT_MAP,
                },
            },
        },
        "violation": {
            "type": ["object", "null"],
            "properties": {
                "i": {"type": "integer"}, "j": {"type": "integer"},
                "condition": {"enum": ["semibrick_endomorphism", "semibrick_orthogonality",
                                       "negative_hom", "negative_ext1"]},
                "degree": {"type": "integer"}, "dim": {"type": "integer"},
            },
        },
    },
}

HOM = {
    "type": "object",
    "required": ["hom"],
    "properties": {
        "hom": _INT_MAP,
        "ext1": _INT_MAP,
        "basis": {"type": "object"},
    },
}

NORMALIZE = {
    "type": "object",
    "required": ["quiver", "potential", "zero_part_connected"],
    "properties": {
        "quiver": {"type": "string"},
        "potential": _INT_MAP,
        "zero_part_connected": {"type": "boolean"},
    },
}

ERROR = {
    "type": "object",
    "required": ["error", "exit_code"],
    "properties": {"error": {"type": "string"}, "exit_code": {"enum": [1, 2, 3]}},
}

SCHEMAS = {
    "classify": CLASSIFY,
    "reduce": REDUCE,
    "qtilde": QTILDE,
    "verify-psmc": PSMC,
    "hom": HOM,
    "normalize": NORMALIZE,
    "error": ERROR,
}
