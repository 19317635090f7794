from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given

from finstoch import core
from finstoch.document import (
    Document,
    DocumentSyntaxError,
    UnresolvedReference,
    ValidationError,
    document_to_json,
    parse_document,
    print_document,
)
from strategies import morphisms

RUNNING = """\
# the two-point example
space p { x0: 1/2, x1: 1/2 }
space q { y0: 3/4, y1: 1/4 }
map f : p -> q { y0 | x0 = 1, y0 | x1 = 1/2, y1 | x1 = 1/2 }
"""


def test_parse_space():
    doc = parse_document("space p { x0: 1/2, x1: 1/2 }")
    assert doc.space("p") == core.make_space(("x0", "x1"), ("1/2", "1/2"))


def test_parse_running_example():
    doc = parse_document(RUNNING)
    f = doc.morphism("f")
    assert f.map.columns() == [(1, 0), (Fraction(1, 2), Fraction(1, 2))]


def test_quoted_and_numeric_labels():
    doc = parse_document('space b { 0: 1/3, "(a,b)": 2/3 }\nspace pt { "•": 1 }')
    assert doc.space("b").labels == ("0", "(a,b)")
    assert doc.space("pt").labels == (core.POINT,)


def test_column_not_summing_to_one():
    text = RUNNING.replace("y1 | x1 = 1/2", "y1 | x1 = 1/3")
    with pytest.raises(ValidationError) as err:
        parse_document(text)
    assert err.value.line == 4


def test_undeclared_space():
    with pytest.raises(UnresolvedReference) as err:
        parse_document("space p { a: 1 }\nmap f : p -> nowhere { }")
    assert (err.value.line, err.value.col) == (2, 14)


def test_syntax_error_position():
    with pytest.raises(DocumentSyntaxError) as err:
        parse_document("space p {\n  a 1 }")
    assert (err.value.line, err.value.col) == (2, 5)
    with pytest.raises(DocumentSyntaxError) as err:
        parse_document("space p { a: 0.5, b: 1/2 }")
    assert err.value.line == 1


def test_map_must_preserve_measure():
    text = RUNNING.replace("space q { y0: 3/4, y1: 1/4 }", "space q { y0: 1/2, y1: 1/2 }")
    with pytest.raises(ValidationError, match="pushforward"):
        parse_document(text)


def test_duplicate_names_and_entries():
    with pytest.raises(ValidationError):
        parse_document("space p { a: 1 }\nspace p { a: 1 }")
    with pytest.raises(ValidationError):
        parse_document("space p { a: 1 }\nmap f : p -> p { a | a = 1, a | a = 1 }")


def test_unknown_lookup():
    with pytest.raises(UnresolvedReference):
        parse_document(RUNNING).morphism("g")


def test_json_mirror_round_trip():
    doc = parse_document(RUNNING)
    data = document_to_json(doc)
    assert data["maps"]["f"]["columns"]["x1"] == {"y0": "1/2", "y1": "1/2"}
    again = parse_document(json.dumps(data))
    assert again.objects() == doc.objects()


def test_bad_json():
    with pytest.raises(DocumentSyntaxError):
        parse_document('{"spaces": ')
    with pytest.raises(ValidationError):
        parse_document('{"spaces": {"p": {"a": 0.5, "b": 0.5}}}')


def test_text_round_trip_is_identity():
    doc = parse_document(RUNNING)
    text = print_document(doc)
    again = parse_document(text)
    assert again.objects() == doc.objects()
    assert print_document(again) == text


@given(morphisms())
def test_generated_round_trip(m):
    doc = Document.from_objects({"f": m})
    again = parse_document(print_document(doc))
    assert again.objects() == doc.objects()
