"""JSON documents for complexes, subcomplexes and Čech inputs.

Ring elements are written as "num/den" strings; plain integers and "num"
strings are accepted on input.  Serialization is canonical, so parsing the
output of :func:`serialize_complex` and serializing again is the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import jsonschema

from .cech import build_cech, cech_subcomplex, validate_cech_subcomplex
from .complexes import Complex, Subcomplex, validate_complex, validate_subcomplex
from .errors import DenominatorNotInverted, PrimecxError, SchemaError, ValidationError
from .modules import FgModule, ModuleMap, Submodule
from .ring import RingCtx, fmt_elem

_ELEM = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"}]}
_VECTOR = {"type": "array", "items": _ELEM}
_MODULE = {
    "type": "object",
    "properties": {
        "invariants": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "free": {"type": "integer", "minimum": 0},
    },
    "required": ["invariants", "free"],
    "additionalProperties": False,
}
_SUBMODULE = {
    "type": "object",
    "properties": {"gens": {"type": "array", "items": _VECTOR}},
    "required": ["gens"],
    "additionalProperties": False,
}
_SUBCOMPLEX = {
    "type": "object",
    "properties": {"parts": {"type": "array", "items": _SUBMODULE}},
    "required": ["parts"],
    "additionalProperties": False,
}
COMPLEX_SCHEMA = {
    "type": "object",
    "properties": {
        "ring": {
            "type": "object",
            "properties": {"u": {"type": "integer", "minimum": 1}},
            "required": ["u"],
            "additionalProperties": False,
        },
        "lo": {"type": "integer"},
        "hi": {"type": "integer"},
        "modules": {"type": "array", "items": _MODULE, "minItems": 1},
        "diffs": {"type": "array", "items": {"type": "array", "items": _VECTOR}},
        "subcomplex": _SUBCOMPLEX,
        "subcomplexes": {"type": "array", "items": _SUBCOMPLEX},
    },
    "required": ["ring", "lo", "hi", "modules", "diffs"],
    "additionalProperties": False,
}
CECH_SCHEMA = {
    "type": "object",
    "properties": {
        "cech": {
            "type": "object",
            "properties": {"elements": {"type": "array", "items": {"type": "integer"}, "minItems": 1}},
            "required": ["elements"],
            "additionalProperties": False,
        },
        "subcomplex": {
            "type": "object",
            "patternProperties": {r"^degree_\d+$": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
            "additionalProperties": False,
        },
    },
    "required": ["cech"],
    "additionalProperties": False,
}


@dataclass
class ComplexDocument:
    complex: Complex
    subcomplex: Subcomplex = None
    subcomplexes: list = None


@dataclass
class CechDocument:
    complex: object
    subcomplex: object = None


def _path(parts):
    return "/" + "/".join(str(p) for p in parts)


def _check_schema(doc, schema):
    validator = jsonschema.Draft7Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = errors[0]
        raise SchemaError(_path(err.absolute_path), err.message)


def parse_elem(value, ctx, path):
    try:
        x = Fraction(value.replace(" ", "")) if isinstance(value, str) else Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(path, f"not a rational number: {value!r}") from exc
    if not ctx.is_inverted(x.denominator):
        raise SchemaError(path, f"denominator {x.denominator} is not invertible in {ctx}")
    return x


def _module(doc, ctx, path):
    try:
        return FgModule(ctx, tuple(doc["invariants"]), doc["free"])
    except (ValueError, PrimecxError) as exc:
        raise SchemaError(path + "/invariants", str(exc)) from exc


def _submodule(doc, module, ctx, path):
    gens = []
    for k, g in enumerate(doc["gens"]):
        if len(g) != module.dim:
            raise SchemaError(f"{path}/gens/{k}", f"expected {module.dim} coordinates, got {len(g)}")
        gens.append(module.elem([parse_elem(x, ctx, f"{path}/gens/{k}/{c}") for c, x in enumerate(g)]))
    return Submodule.span(module, gens)


def _subcomplex(doc, cx, path):
    if len(doc["parts"]) != len(cx.modules):
        raise SchemaError(path + "/parts", f"expected {len(cx.modules)} parts, got {len(doc['parts'])}")
    parts = [_submodule(p, m, cx.ctx, f"{path}/parts/{k}") for k, (p, m) in enumerate(zip(doc["parts"], cx.modules))]
    sub = Subcomplex(cx, parts, check=False)
    bad = validate_subcomplex(sub)
    if bad is not None:
        i, g = bad
        raise ValidationError(i, f"d_{i}({g}) is not in S_{i - 1}")
    return sub


def parse_complex_doc(doc):
    _check_schema(doc, COMPLEX_SCHEMA)
    ctx = RingCtx(doc["ring"]["u"])
    lo, hi = doc["lo"], doc["hi"]
    if hi - lo + 1 != len(doc["modules"]):
        raise SchemaError("/hi", f"window {lo}..{hi} needs {hi - lo + 1} modules, got {len(doc['modules'])}")
    if len(doc["diffs"]) != len(doc["modules"]) - 1:
        raise SchemaError("/diffs", f"expected {len(doc['modules']) - 1} differentials, got {len(doc['diffs'])}")
    mods = [_module(m, ctx, f"/modules/{k}") for k, m in enumerate(doc["modules"])]
    diffs = []
    for k, mat in enumerate(doc["diffs"]):
        dom, cod = mods[k + 1], mods[k]
        path = f"/diffs/{k}"
        if len(mat) != cod.dim or any(len(r) != dom.dim for r in mat):
            raise SchemaError(path, f"matrix of d_{lo + k + 1} must be {cod.dim} x {dom.dim}")
        entries = [[parse_elem(x, ctx, f"{path}/{i}/{j}") for j, x in enumerate(r)] for i, r in enumerate(mat)]
        f = ModuleMap(dom, cod, entries, check=False)
        bad = f.well_definedness_failure()
        if bad is not None:
            raise SchemaError(path, f"d_{lo + k + 1} is not well defined: {bad}")
        diffs.append(f)
    cx = Complex(ctx, lo, mods, diffs, check=False)
    bad = validate_complex(cx)
    if bad is not None:
        raise ValidationError(bad, f"d_{bad} o d_{bad + 1} != 0")
    out = ComplexDocument(cx)
    if "subcomplex" in doc:
        out.subcomplex = _subcomplex(doc["subcomplex"], cx, "/subcomplex")
    if "subcomplexes" in doc:
        out.subcomplexes = [_subcomplex(s, cx, f"/subcomplexes/{k}") for k, s in enumerate(doc["subcomplexes"])]
    return out


def parse_cech_doc(doc):
    _check_schema(doc, CECH_SCHEMA)
    try:
        cx = build_cech(doc["cech"]["elements"])
    except PrimecxError as exc:
        raise SchemaError("/cech/elements", str(exc)) from exc
    out = CechDocument(cx)
    if "subcomplex" in doc:
        gens = {}
        for key, vals in doc["subcomplex"].items():
            k = int(key.split("_")[1])
            if k not in cx.degrees:
                raise SchemaError(f"/subcomplex/{key}", f"degree {k} is outside 0..{len(cx.components) - 1}")
            if len(vals) != cx.component(k).dim:
                raise SchemaError(f"/subcomplex/{key}", f"expected {cx.component(k).dim} generators")
            gens[k] = vals
        sub = cech_subcomplex(cx, gens, check=False)
        bad = validate_cech_subcomplex(sub)
        if bad is not None:
            raise ValidationError(bad[0], f"image of summand {bad[1]} leaves degree {bad[0] + 1}")
        out.subcomplex = sub
    return out


def parse_document(data):
    """Parse bytes, text or an already-loaded object into a complex or Čech document."""
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError("/", f"not UTF-8: {exc}") from exc
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError("/", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SchemaError("/", "document must be an object")
    if "cech" in data:
        return parse_cech_doc(data)
    return parse_complex_doc(data)


# ---------------------------------------------------------------------------
# serialization


def module_doc(m):
    return {"invariants": list(m.invariants), "free": m.free}


def matrix_doc(f):
    return [[fmt_elem(x) for x in row] for row in f.matrix]


def submodule_doc(s):
    return {"gens": [[fmt_elem(x) for x in g.coords] for g in s.generators()]}


def subcomplex_doc(sub):
    return {"parts": [submodule_doc(p) for p in sub.parts]}


def serialize_complex(cx, subcomplex=None, subcomplexes=None):
    doc = {
        "ring": {"u": cx.ctx.u},
        "lo": cx.lo,
        "hi": cx.hi,
        "modules": [module_doc(m) for m in cx.modules],
        "diffs": [matrix_doc(d) for d in cx.diffs],
    }
    if subcomplex is not None:
        doc["subcomplex"] = subcomplex_doc(subcomplex)
    if subcomplexes is not None:
        doc["subcomplexes"] = [subcomplex_doc(s) for s in subcomplexes]
    return doc


def serialize_cech(cx, subcomplex=None):
    doc = {"cech": {"elements": list(cx.elements)}}
    if subcomplex is not None:
        doc["subcomplex"] = subcomplex.to_doc()
    return doc


def serialize_document(parsed):
    if isinstance(parsed, CechDocument):
        return serialize_cech(parsed.complex, parsed.subcomplex)
    return serialize_complex(parsed.complex, parsed.subcomplex, parsed.subcomplexes)


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
