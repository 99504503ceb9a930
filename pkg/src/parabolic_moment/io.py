"""JSON encoding of rationals, matrices, quadruples and command inputs.

Rationals are strings ``"p/q"`` (``"p"`` when q = 1); plain JSON integers are
accepted on input.  Matrices are row-major nested arrays.  Indices in
serialised output are 1-based.
"""

import json

import jsonschema
import numpy as np

from .errors import NotInP
from .exact_linalg import fmt_rat, matrix, vector
from .moment import make_quad
from .parabolic import Region, check_region, new_context

RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*[1-9]\d*)?\s*$"},
    ]
}
VECTOR = {"type": "array", "items": RATIONAL}
MATRIX = {"type": "array", "items": VECTOR, "minItems": 1}
COMPOSITION = {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1}
INDEX = {"type": "array", "items": {"type": "integer", "minimum": 0}}

_BASE = {"alpha": COMPOSITION, "allow_conjecture": {"type": "boolean"}}

SCHEMAS = {
    "moment": {
        "type": "object",
        "properties": {**_BASE, "r": MATRIX, "s": MATRIX, "i": VECTOR, "j": VECTOR},
        "required": ["alpha", "r", "s", "i", "j"],
    },
    "semicanonical": {
        "type": "object",
        "properties": {**_BASE, "r": MATRIX},
        "required": ["alpha", "r"],
    },
    "spec": {
        "type": "object",
        "properties": {**_BASE, "r": MATRIX},
        "required": ["alpha", "r"],
    },
    "components": {
        "type": "object",
        "properties": {**_BASE, "a": INDEX, "aprime": INDEX, "rho": VECTOR, "sigma": VECTOR},
        "required": ["alpha"],
        "dependentRequired": {"a": ["rho", "sigma"], "aprime": ["a"]},
    },
    "cm": {
        "type": "object",
        "properties": {**_BASE, "rho": VECTOR, "sigma": VECTOR},
        "required": ["alpha", "rho", "sigma"],
    },
    "hamiltonian": {
        "type": "object",
        "properties": {**_BASE, "rho": VECTOR, "sigma": VECTOR},
        "required": ["alpha", "rho", "sigma"],
    },
}


class SchemaError(ValueError):
    def __init__(self, pointer, message):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"


def json_pointer(path):
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def validate(kind, doc):
    validator = jsonschema.Draft202012Validator(SCHEMAS[kind])
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(json_pointer(err.absolute_path), err.message)


def mat_to_json(m):
    return [[fmt_rat(x) for x in row] for row in np.asarray(m)]


def vec_to_json(v):
    return [fmt_rat(x) for x in np.asarray(v)]


def quad_to_json(q):
    return {"r": mat_to_json(q.r), "s": mat_to_json(q.s), "i": vec_to_json(q.i), "j": vec_to_json(q.j)}


def context_from(doc):
    alpha = tuple(doc["alpha"])
    return new_context(sum(alpha), alpha, doc.get("allow_conjecture", False))


def _square(ctx, doc, key):
    rows = doc[key]
    if len(rows) != ctx.n or any(len(row) != ctx.n for row in rows):
        raise SchemaError(f"/{key}", f"expected a {ctx.n}x{ctx.n} matrix")
    return matrix(rows)


def _vec(ctx, doc, key):
    if len(doc[key]) != ctx.n:
        raise SchemaError(f"/{key}", f"expected {ctx.n} entries")
    return vector(doc[key])


def matrix_in(ctx, doc, key, region):
    m = _square(ctx, doc, key)
    try:
        check_region(ctx, m, region, key)
    except NotInP as err:
        p, q = err.cell
        raise SchemaError(f"/{key}/{p - 1}/{q - 1}", str(err)) from None
    return m


def quad_from(ctx, doc):
    return make_quad(
        ctx,
        matrix_in(ctx, doc, "r", Region.P),
        matrix_in(ctx, doc, "s", Region.PSTAR),
        _vec(ctx, doc, "i"),
        _vec(ctx, doc, "j"),
        check=False,
    )


def vector_in(ctx, doc, key):
    return _vec(ctx, doc, key)


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
