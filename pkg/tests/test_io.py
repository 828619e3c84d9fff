import json
from pathlib import Path

import pytest

from primecx.complexes import Complex
from primecx.errors import SchemaError, ValidationError
from primecx.io import CechDocument, ComplexDocument, dumps, parse_document, serialize_document

EXAMPLES = Path(__file__).resolve().parent.parent / "docs" / "examples"

MINIMAL = {"ring": {"u": 1}, "lo": 0, "hi": 0, "modules": [{"invariants": [], "free": 1}], "diffs": []}


def test_minimal_document():
    doc = parse_document(json.dumps(MINIMAL).encode())
    assert isinstance(doc, ComplexDocument) and isinstance(doc.complex, Complex)
    assert doc.complex.modules[0].free == 1 and doc.subcomplex is None


def test_dsquared_violation_has_index():
    bad = {"ring": {"u": 1}, "lo": 0, "hi": 2,
           "modules": [{"invariants": [], "free": 1}] * 3, "diffs": [[["3"]], [["2"]]]}
    with pytest.raises(ValidationError) as exc:
        parse_document(bad)
    assert exc.value.index == 1


def test_closure_violation():
    doc = {"ring": {"u": 1}, "lo": 0, "hi": 1, "modules": [{"invariants": [], "free": 1}] * 2,
           "diffs": [[["1"]]], "subcomplex": {"parts": [{"gens": [["2"]]}, {"gens": [["1"]]}]}}
    with pytest.raises(ValidationError) as exc:
        parse_document(doc)
    assert exc.value.index == 1


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d["modules"][0].update(invariants=[0]), "/modules/0/invariants/0"),
    (lambda d: d["modules"][0].update(invariants=[4, 6]), "/modules/0/invariants"),
    (lambda d: d.update(hi=3), "/hi"),
    (lambda d: d["ring"].update(u=0), "/ring/u"),
    (lambda d: d.update(extra=1), "/"),
])
def test_schema_errors_carry_paths(mutate, path):
    doc = json.loads(json.dumps(MINIMAL))
    mutate(doc)
    with pytest.raises(SchemaError) as exc:
        parse_document(doc)
    assert exc.value.path == path


def test_uninverted_denominator():
    doc = json.loads(json.dumps(MINIMAL))
    doc["subcomplex"] = {"parts": [{"gens": [["1/2"]]}]}
    with pytest.raises(SchemaError) as exc:
        parse_document(doc)
    assert exc.value.path == "/subcomplex/parts/0/gens/0/0"


def test_bad_json_and_encoding():
    with pytest.raises(SchemaError):
        parse_document(b"{not json")
    with pytest.raises(SchemaError):
        parse_document(b"\xff\xfe")
    with pytest.raises(SchemaError):
        parse_document("[1, 2]")


@pytest.mark.parametrize("name", ["times2_prime.json", "times2_not_prime.json", "avoidance_counterexample.json",
                                  "cech_357.json"])
def test_round_trip(name):
    first = parse_document(EXAMPLES.joinpath(name).read_bytes())
    text = dumps(serialize_document(first))
    again = parse_document(text)
    assert dumps(serialize_document(again)) == text
    if isinstance(first, ComplexDocument):
        assert again.complex == first.complex
        assert again.subcomplex == first.subcomplex


def test_cech_document():
    doc = parse_document({"cech": {"elements": [3, 5, 7]}, "subcomplex": {"degree_0": [0], "degree_1": [2, 1, 1]}})
    assert isinstance(doc, CechDocument)
    assert doc.subcomplex.part(1).gens == (2, 1, 1)
    with pytest.raises(SchemaError):
        parse_document({"cech": {"elements": [6, 10]}})
    with pytest.raises(SchemaError):
        parse_document({"cech": {"elements": [3, 5]}, "subcomplex": {"degree_5": [1]}})
    with pytest.raises(ValidationError):
        parse_document({"cech": {"elements": [3, 5, 7]}, "subcomplex": {"degree_1": [2, 1, 1]}})


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
