# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/unit/test_catalog.py
"""Tests for the catalog of named modules."""

import pytest

from hvmod.catalog import (
    CATALOG_NAMES,
    catalog,
    describe,
    gysin_model,
    parse_representation,
    rp2_relative,
)
from hvmod.hv import Representation
from hvmod.umod import graded_dim, is_hfree, is_isomorphic_bounded, validate
from tests.fixtures.modules import entry


def _nonzero(dims):
    return {n: d for n, d in dims.items() if d}


@pytest.mark.parametrize("name", [n for n in CATALOG_NAMES
                                  if n not in ("rp2", "gysin")])
def test_every_entry_is_valid(name):
    assert validate(catalog(name, max_degree=8).presentation, 8).holds


@pytest.mark.parametrize("name", [n for n in CATALOG_NAMES
                                  if n not in ("rp2", "gysin")])
def test_every_entry_has_a_description(name):
    assert describe(name)
    assert catalog(name).provenance


def test_finite_entries_match_expected_dims():
    for name in CATALOG_NAMES:
        if name in ("rp2", "gysin"):
            continue
        found = catalog(name, max_degree=8)
        if found.finite:
            dims = _nonzero(graded_dim(found.presentation, 8))
            assert dims == found.expected_dims, name


def test_unknown_name():
    with pytest.raises(KeyError, match="unknown catalog entry"):
        catalog("nonsense")


@pytest.mark.parametrize("name, args", [
    ("sigma-h", ("1",)),
    ("hv", ("x",)),
    ("rp2", ("1",)),
    ("rp2", ("1", "1")),
    ("gysin", ()),
])
def test_bad_arguments(name, args):
    with pytest.raises(KeyError):
        catalog(name, *args)


def test_hv_rank_argument():
    found = catalog("hv", "2")
    assert found.presentation.rank == 2
    assert found.args == ("2",)


@pytest.mark.parametrize("i, j", [(3, 0), (2, 1), (1, 2), (0, 3)])
def test_rp2_models_are_free(i, j):
    p = rp2_relative(i, j)
    assert validate(p, 10).holds
    assert is_hfree(p, 10).holds
    assert [g.degree for g in p.generators] == [1, 2]


def test_rp2_swap_is_reported_as_3_0():
    assert catalog("rp2", "0", "3").presentation.name == "rp2(3,0)"


def test_rp2_3_0_is_the_tensor_solution():
    p = rp2_relative(3, 0)
    assert is_isomorphic_bounded(p, entry("j2-tensor"), 8).verdict.holds


def test_poly_c2_dims():
    found = catalog("f2-poly-c2", max_degree=8)
    assert found.expected_dims == {0: 1, 4: 1, 8: 1}
    names = [g.name for g in found.presentation.generators]
    assert names == ["z0", "z1", "z2"]


def test_bsu2_models_are_free():
    for name in ("bsu2-a", "bsu2-b"):
        p = catalog(name, max_degree=8).presentation
        assert p.rank == 1
        assert is_hfree(p, 8).holds


def test_parse_representation():
    assert parse_representation("t") == Representation(1, ((1,),))
    assert parse_representation("t,0").trivial_count == 1
    rho = parse_representation("t1,t1+t2")
    assert rho.rank == 2
    assert rho.characters == ((1, 0), (1, 1))
    with pytest.raises(ValueError):
        parse_representation("")


def test_gysin_without_trivial_summand():
    found = gysin_model(parse_representation("t"))
    assert found.name == "gysin t"
    assert is_isomorphic_bounded(found.presentation, entry("tH"),
                                 8).verdict.holds


def test_gysin_with_trivial_summand():
    found = catalog("gysin", "t,0")
    dims = _nonzero(graded_dim(found.presentation, 4))
    assert dims == {0: 1, 1: 1, 2: 2, 3: 2, 4: 2}
    assert found.args == ("t,0",)
