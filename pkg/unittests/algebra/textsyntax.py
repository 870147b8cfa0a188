import pytest
from hypothesis import given, settings, strategies as st

from src.errors import ParseError
from src.parser import format_labeled, format_poly, parse_poly
from src.poly import Poly


@pytest.mark.parametrize("text,sizes", [("y^3 + 2y + 1", (3, 1, 1, 0)),
                                        ("y", (1,)),
                                        ("3", (0, 0, 0)),
                                        ("0", ()),
                                        ("y^2+y^2", (2, 2)),
                                        ("4y^0", (0, 0, 0, 0))])
def test_algebraic(text: str, sizes):
    assert parse_poly(text).normal_form() == sizes


@pytest.mark.parametrize("text", ["y^3 + 2y + 1", "y^2 + 2y + 1", "y^3", "0", "y + 5"])
def test_algebraic_roundtrip(text: str):
    assert format_poly(parse_poly(text)) == text


def test_labeled():
    p = parse_poly("{i1: [d1, d2], i2: []}")
    assert list(p.positions) == ["i1", "i2"]
    assert list(p["i1"]) == ["d1", "d2"]
    assert len(p["i2"]) == 0


def test_labeled_quoted():
    p = parse_poly('{"a b": ["x y"]}')
    assert list(p.positions) == ["a b"]
    assert parse_poly(format_labeled(p)) == p


@given(st.lists(st.integers(0, 4), max_size=5))
@settings(max_examples=50, deadline=None)
def test_labeled_roundtrip(sizes):
    p = Poly.from_sizes(sizes)
    assert parse_poly(format_labeled(p)) == p


@given(st.lists(st.integers(0, 4), max_size=5))
@settings(max_examples=50, deadline=None)
def test_algebraic_printer(sizes):
    p = Poly.from_sizes(sizes)
    assert parse_poly(format_poly(p)).normal_form() == p.normal_form()


@pytest.mark.parametrize("text", ["y^", "2 y y", "{i1: [d1}", "x + 1", "{a: [], a: []}"])
def test_invalid(text: str):
    with pytest.raises(ParseError):
        parse_poly(text)
