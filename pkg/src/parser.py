"""
Text syntax for polynomials: algebraic `y^3 + 2y + 1` and labeled `{i1: [d1, d2], i2: []}`.
"""
import re
from typing import List, Tuple

from pyparsing import (Group, Literal, Optional, ParseException, QuotedString, Suppress, Word, ZeroOrMore, alphanums,
                       delimitedList, nums, StringEnd)

from src.backend import render_label
from src.errors import ParseError
from src.poly import Poly

PLAIN_LABEL = re.compile(r"^[A-Za-z0-9_.*'-]+$")


def _algebraic_grammar():
    integer = Word(nums).setParseAction(lambda toks: int(toks[0]))
    variable = Literal("y") + Optional(Suppress("^") + integer, default=1)
    monomial = Group(Optional(integer, default=1) + variable) | Group(integer)
    return monomial + ZeroOrMore(Suppress("+") + monomial) + StringEnd()


def _labeled_grammar():
    label = QuotedString('"') | Word(alphanums + "_.*'-")
    directions = Group(Suppress("[") + Optional(delimitedList(label)) + Suppress("]"))
    entry = Group(label + Suppress(":") + directions)
    return Suppress("{") + Optional(delimitedList(entry)) + Suppress("}") + StringEnd()


ALGEBRAIC = _algebraic_grammar()
LABELED = _labeled_grammar()


def _terms(text: str) -> List[Tuple[int, int]]:
    out = []
    for term in ALGEBRAIC.parseString(text):
        if len(term) == 1:
            out.append((term[0], 0))
        else:
            out.append((term[0], term[2]))
    return out


def parse_poly(text: str) -> Poly:
    text = text.strip()
    try:
        if text.startswith("{"):
            return Poly((str(entry[0]), [str(d) for d in entry[1]]) for entry in LABELED.parseString(text))
        sizes = [exponent for coefficient, exponent in _terms(text) for _ in range(coefficient)]
        return Poly.from_sizes(sizes)
    except ParseException as exc:
        raise ParseError(f"invalid polynomial: {exc.msg}", f"column {exc.col}", text)
    except ValueError as exc:
        raise ParseError(str(exc), "labels", text)


def format_poly(p: Poly) -> str:
    counts = {}
    for size in p.sizes():
        counts[size] = counts.get(size, 0) + 1
    terms = []
    for exponent in sorted(counts, reverse=True):
        coefficient = counts[exponent]
        if exponent == 0:
            terms.append(str(coefficient))
            continue
        term = "y" if exponent == 1 else f"y^{exponent}"
        terms.append(term if coefficient == 1 else f"{coefficient}{term}")
    return " + ".join(terms) if terms else "0"


def _quote(label) -> str:
    text = render_label(label)
    return text if PLAIN_LABEL.match(text) else f'"{text}"'


def format_labeled(p: Poly) -> str:
    entries = [f"{_quote(i)}: [" + ", ".join(_quote(d) for d in p[i]) + "]" for i in p.positions]
    return "{" + ", ".join(entries) + "}"
