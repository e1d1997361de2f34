# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/unit/test_steenrod.py
"""Tests for Adem rewriting and the modules F(m), J(n)."""

import pytest

from hvmod.f2lin import F2Matrix
from hvmod.steenrod import (
    SteenrodElement,
    adem_normalize,
    admissible_monomials,
    binom2,
    brown_gitler,
    excess,
    format_steenrod,
    free_unstable,
    parse_steenrod,
)


@pytest.mark.parametrize("expr, expected", [
    ("Sq2 Sq2", "Sq3 Sq1"),
    ("Sq1 Sq1", "0"),
    ("Sq1 Sq2", "Sq3"),
    ("Sq2 Sq3", "Sq4 Sq1 + Sq5"),
    ("Sq3 Sq2", "0"),
    ("Sq2 Sq1", "Sq2 Sq1"),
    ("Sq2 Sq2 + Sq3 Sq1", "0"),
])
def test_adem_examples(expr, expected):
    assert format_steenrod(parse_steenrod(expr)) == expected


def test_binom2_negative_top():
    assert binom2(4, 2) == 0
    assert binom2(5, 1) == 1
    assert binom2(-1, 3) == 1
    assert binom2(3, -1) == 0


def test_unit_and_zero():
    assert str(parse_steenrod("1")) == "1"
    assert parse_steenrod("0").is_zero()
    assert SteenrodElement.unit().degree == 0
    assert SteenrodElement.zero().degree is None


def test_product_normalizes():
    sq1 = parse_steenrod("Sq1")
    sq2 = parse_steenrod("Sq2")
    assert (sq1 * sq1).is_zero()
    assert sq2 * sq2 == parse_steenrod("Sq3 Sq1")
    assert (sq1 * sq2).degree == 3


def test_inhomogeneous_rejected():
    with pytest.raises(ValueError):
        adem_normalize([(1,), (2,)])
    with pytest.raises(ValueError):
        parse_steenrod("Sq1 + Sq2")


def test_bad_tokens_rejected():
    with pytest.raises(ValueError):
        parse_steenrod("Sq2 x")
    with pytest.raises(ValueError):
        parse_steenrod("Sq1 + ")


def test_admissible_counts():
    counts = [len(admissible_monomials(n)) for n in range(8)]
    assert counts == [1, 1, 1, 2, 2, 2, 3, 4]
    assert admissible_monomials(3) == ((2, 1), (3,))


def test_excess():
    assert excess((2, 1)) == 1
    assert excess((4, 2, 1)) == 1
    assert excess((3,)) == 3
    with pytest.raises(ValueError):
        excess((1, 2))


def test_free_unstable_on_degree_one():
    """F(1) has a class in each degree 2^k."""
    f1 = free_unstable(1, 8)
    assert {n: d for n, d in f1.dims().items() if d} == {
        1: 1, 2: 1, 4: 1, 8: 1}


def test_free_unstable_on_degree_zero():
    assert {n: d for n, d in free_unstable(0, 6).dims().items() if d} == {
        0: 1}


def test_free_unstable_bounds():
    with pytest.raises(ValueError):
        free_unstable(5, 3)


def test_brown_gitler_j2():
    j2 = brown_gitler(2, 4)
    assert j2.space.nonzero_dims() == {1: 1, 2: 1}
    assert j2.sq_map(1, 1) == F2Matrix.from_lists([[1]])
    assert j2.rank == 0


def test_brown_gitler_small():
    assert brown_gitler(0, 3).space.nonzero_dims() == {0: 1}
    assert brown_gitler(1, 3).space.nonzero_dims() == {1: 1}
    assert brown_gitler(3, 5).space.nonzero_dims() == {2: 1, 3: 1}
    with pytest.raises(ValueError):
        brown_gitler(-1, 3)
