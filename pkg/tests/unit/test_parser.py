# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/unit/test_parser.py
"""Tests for the presentation file format."""

import pytest

from hvmod.catalog import CATALOG_NAMES, catalog
from hvmod.parser import (
    format_presentation,
    load_presentation,
    parse_element,
    parse_presentation,
)
from hvmod.types import PresentationError
from hvmod.umod import Generator, graded_dim, is_isomorphic_bounded
from tests.fixtures.modules import element, mod_file


def test_parse_simple_presentation():
    p = parse_presentation(
        "name tensor\n"
        "rank 1\n"
        "generator a 1\n"
        "generator b 2   # comment\n"
        "sq 1 a = b\n")
    assert p.name == "tensor"
    assert p.rank == 1
    assert [g.name for g in p.generators] == ["a", "b"]
    assert p.sq_of(0, 1) == element((1, (0,)))


def test_sq_line_after_keyword_split():
    p = parse_presentation("rank 1\ngenerator g 2\nsq 1 g = t*g\n")
    assert p.sq_of(0, 1) == element((0, (1,)))
    th = catalog("tH").presentation
    again = parse_presentation(format_presentation(th))
    assert set(again.sq_table) == set(th.sq_table)


def test_parse_element():
    gens = (Generator("a", 1), Generator("b", 2))
    e = parse_element("t*a + b", 1, gens)
    assert e == element((0, (1,)), (1, (0,)))
    assert parse_element("0", 1, gens).is_zero()
    with pytest.raises(ValueError):
        parse_element("t*c", 1, gens)


def test_zero_squares_are_dropped():
    p = parse_presentation("rank 1\ngenerator g 1\nsq 1 g = 0\n")
    assert p.sq_table == ()


@pytest.mark.parametrize("text, line, message", [
    ("generator g 1\n", 1, "'rank' must come first"),
    ("rank 1\ngenerator t 1\n", 2, "bad generator name"),
    ("rank 1\ngenerator g 1\ngenerator g 2\n", 3, "declared twice"),
    ("rank 1\ngenerator g 1\nsq 1 h = t*g\n", 3, "unknown generator"),
    ("rank 1\ngenerator g 2\nsq 1 g = t^2*g\n", 3, "has degree 4"),
    ("rank 1\ngenerator g 1\nsq 1 g = t*g\nsq 1 g = t*g\n", 4,
     "given twice"),
    ("rank 1\ngenerator g 1\nsubgen g + t*g\n", 3, "inhomogeneous"),
    ("rank 1\nfrobnicate\n", 2, "unknown declaration"),
    ("rank x\n", 1, "usage: rank"),
])
def test_parse_errors_cite_lines(text, line, message):
    with pytest.raises(PresentationError, match=message) as info:
        parse_presentation(text, "input.mod")
    assert info.value.line == line
    assert str(info.value).startswith(f"input.mod:{line}: ")


def test_missing_rank():
    with pytest.raises(PresentationError, match="missing 'rank'"):
        parse_presentation("name empty\n")


def test_load_file_error_has_line_number():
    with pytest.raises(PresentationError) as info:
        load_presentation(mod_file("malformed"))
    assert info.value.line == 4
    assert "must vanish" in str(info.value)


def test_load_file_and_default_name():
    p = load_presentation(mod_file("h_geq_1"))
    assert p.name == "h_geq_1"
    assert p.subgens == (element((0, (1,))),)
    assert graded_dim(p, 3) == {0: 0, 1: 1, 2: 1, 3: 1}


def test_load_catalog_reference():
    p = load_presentation("catalog:rp2:2:1")
    assert p.name == "rp2(2,1)"
    with pytest.raises(KeyError):
        load_presentation("catalog:nonsense")


def test_exotic_file_matches_catalog():
    p = load_presentation(mod_file("exotic_j2"))
    model = catalog("j2-exotic").presentation
    assert is_isomorphic_bounded(p, model, 8).verdict.holds


@pytest.mark.parametrize("name", [n for n in CATALOG_NAMES
                                  if n not in ("rp2", "gysin")])
def test_export_reparses(name):
    """Exported text parses back to the same presentation."""
    p = catalog(name, max_degree=8).presentation
    again = parse_presentation(format_presentation(p))
    assert again.generators == p.generators
    assert set(again.sq_table) == set(p.sq_table)
    assert again.subgens == p.subgens
    assert again.relations == p.relations
    assert graded_dim(again, 6) == graded_dim(p, 6)
