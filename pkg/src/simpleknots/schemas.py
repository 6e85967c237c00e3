"""JSON Schemas for ``--format json`` output, keyed by the ``schema`` field."""

_INT = {"type": "integer"}
_BOOL = {"type": "boolean"}
_GRADING = {"oneOf": [_INT, {"type": "string", "pattern": r"^-?\d+/2$"}]}
_TERMS = {"type": "array", "items": {"type": "string", "pattern": r"^-?\d+:-?\d+$"}}


def _obj(schema_id: str, props: dict) -> dict:
    props = {"schema": {"const": schema_id}, **props}
    return {"type": "object", "properties": props, "required": sorted(props),
            "additionalProperties": False}


SCHEMAS = {
    "simpleknots.genus/1": _obj("simpleknots.genus/1", {
        "p": _INT, "q": _INT, "k": _INT, "primitive": _BOOL, "width": _INT,
        "genus": {"type": ["integer", "null"]},
        "gradings": {"type": "array", "items": _GRADING},
        "euler_characteristic": {"type": "string"},
        "euler_characteristic_terms": _TERMS,
        "alexander": {"type": ["string", "null"]},
        "alexander_terms": {"oneOf": [_TERMS, {"type": "null"}]},
    }),
    "simpleknots.classify/1": _obj("simpleknots.classify/1", {
        "p": _INT, "k": _INT, "q": _INT,
        "families": {"type": "array", "items": {"type": "string"}},
        "matches": {"type": "array", "items": {
            "type": "object", "required": ["tag", "representative", "k_star", "witness"],
            "properties": {"tag": {"type": "string"},
                           "representative": {"enum": ["k", "-k", "k^-1", "-k^-1"]},
                           "k_star": _INT, "witness": {"type": "object"}}}},
        "width": _INT, "two_p": _INT, "genus": _INT,
        "lspace_criterion": _BOOL, "agrees": _BOOL,
    }),
    "simpleknots.surgeries/1": _obj("simpleknots.surgeries/1", {
        "p": _INT, "q": _INT, "k": _INT, "homology_class": _INT, "primitive": _BOOL,
        "self_linking": {"type": ["integer", "null"]},
        "coefficients": {"type": "array", "items": _INT},
        "zhs_surgery": _BOOL,
        "zhs_coefficients": {"type": "array", "items": {"enum": [1, -1]}},
        "lspace": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["cone", "width_criterion"]}},
    }),
    "simpleknots.cone/1": _obj("simpleknots.cone/1", {
        "p": _INT, "q": _INT, "k": _INT, "m": _INT, "mirrored": _BOOL,
        "window": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2},
        "chains": {"type": "array", "items": {
            "type": "object", "required": ["residue", "start", "labels", "rank"],
            "properties": {"labels": {"type": "string", "pattern": "^[-+o]*$"}}}},
        "summands": {"type": "array", "items": {
            "type": "object", "required": ["a", "b", "type"],
            "properties": {"type": {"enum": ["[-,-]", "[-,+]", "[+,-]", "[+,+]"]}}}},
        "rank": _INT, "lspace": _BOOL,
    }),
    "simpleknots.enumerate/1": _obj("simpleknots.enumerate/1", {
        "tag": {"type": "string"}, "max_p": _INT,
        "pairs": {"type": "array", "items": {"type": "array", "items": _INT,
                                             "minItems": 2, "maxItems": 2}},
    }),
    "simpleknots.sweep/1": _obj("simpleknots.sweep/1", {
        "max_p": _INT, "dedup": _BOOL, "tange_negative_j": _BOOL,
        "last_completed_p": _INT, "knots_checked": _INT, "lspace_count": _INT,
        "conjecture_violations": {"type": "array", "items": {"$ref": "#/$defs/exception"}},
        "realizability_anomalies": {"type": "array", "items": {"$ref": "#/$defs/exception"}},
        "complete": _BOOL, "elapsed": {"type": "number"}, "worker_count": _INT,
    }) | {"$defs": {"exception": {
        "type": "object", "required": ["p", "k", "q", "width", "kind", "families"],
        "properties": {"kind": {"enum": ["conjecture_violation", "realizability_anomaly"]}}}}},
}
