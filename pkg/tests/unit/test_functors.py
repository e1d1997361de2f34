# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/unit/test_functors.py
"""Tests for E-bar, Tor1, tensoring with H, Fix and the Smith sequence."""

import pytest

from hvmod.functors import (
    fix_z2,
    induced_bar,
    localize,
    quotient_E,
    smith_sequence,
    suspend,
    tensor_with_HV,
    tor1,
)
from hvmod.steenrod import brown_gitler
from hvmod.types import PresentationError
from hvmod.umod import (
    free_presentation,
    homomorphisms,
    is_isomorphic_bounded,
    materialize,
)
from tests.fixtures.modules import entry


@pytest.mark.parametrize("name, dims", [
    ("hv", {0: 1}),
    ("jv1", {0: 1}),
    ("sigma-h", {1: 1}),
    ("h-plus-sigma-h", {0: 1, 1: 1}),
    ("j2-tensor", {1: 1, 2: 1}),
    ("j2-exotic", {1: 1, 2: 1}),
])
def test_quotient_dims(name, dims):
    assert quotient_E(entry(name), 8).space.nonzero_dims() == dims


def test_quotient_of_exotic_is_j2():
    """Both J(2) solutions have E-bar = J(2), Sq1 included."""
    j2 = entry("j2")
    for name in ("j2-tensor", "j2-exotic"):
        bar = quotient_E(entry(name), 8)
        assert is_isomorphic_bounded(bar, j2, 8).verdict.holds


def test_tor1_rank_one():
    f2 = tor1(entry("f2"), 6)
    assert {n: d for n, d in f2.dims.items() if d} == {1: 1}
    assert not any(tor1(entry("hv"), 6).dims.values())
    jv1 = tor1(entry("jv1"), 6)
    assert jv1.module.space.nonzero_dims() == {2: 1}


def test_tor1_rank_two_free_vanishes():
    assert not any(tor1(entry("hv", "2"), 4).dims.values())


def test_tor1_of_plain_a_module_is_zero():
    result = tor1(entry("j2"), 4)
    assert result.module is None
    assert not any(result.dims.values())


def test_suspend_shifts_labels():
    m = suspend(materialize(entry("hv"), 3).module)
    assert m.bottom == 1
    assert m.label(1, 0) == "Σe"


def test_double_suspension_of_f2():
    m = suspend(brown_gitler(0, 0), 2)
    assert m.space.nonzero_dims() == {2: 1}
    assert m.label(2, 0).startswith("Σ^2 ")


def test_tensor_with_j2_is_the_tensor_solution():
    p = tensor_with_HV(brown_gitler(2, 2))
    assert is_isomorphic_bounded(p, entry("j2-tensor"), 8).verdict.holds


def test_tensor_needs_rank_zero():
    with pytest.raises(PresentationError):
        tensor_with_HV(entry("hv"))


def test_induced_bar_of_identity():
    maps = list(homomorphisms(entry("hv"), entry("hv"), 4))
    bars = [induced_bar(f) for f in maps]
    assert sorted(b[0].column(0) for b in bars) == [0, 1]


def test_localize_window():
    w = localize(entry("hv"), 3)
    assert w.module.bottom == -3
    assert w.module.label(-2, 0) == "t^-2*e"
    assert w.embed(0) == [1]


def test_localize_rejects_quotients():
    with pytest.raises(ValueError):
        localize(entry("jv1"), 3)


@pytest.mark.parametrize("name, dims", [
    ("hv", {0: 1}),
    ("sigma-t-h", {1: 1}),
    ("j2-exotic", {0: 1, 1: 1}),
    ("j2-tensor", {1: 1, 2: 1}),
])
def test_fix_dims(name, dims):
    assert fix_z2(entry(name), 16).space.nonzero_dims() == dims


def test_fix_of_tensor_is_j2():
    fix = fix_z2(entry("j2-tensor"), 16)
    assert is_isomorphic_bounded(fix, entry("j2"), fix.top).verdict.holds


def test_fix_is_certified_to_half():
    assert fix_z2(entry("hv"), 10).top == 5


def test_fix_refuses_modules_with_torsion():
    with pytest.raises(PresentationError, match="not free over H"):
        fix_z2(entry("jv1"), 8)


def test_fix_refuses_rank_two():
    with pytest.raises(ValueError):
        fix_z2(entry("hv", "2"), 8)


def test_smith_tensor_has_no_cokernel():
    report = smith_sequence(entry("j2-tensor"), 16)
    assert report.cokernel.is_zero()
    assert report.eta_injective.holds
    assert report.four_term_exact.holds


def test_smith_exotic():
    report = smith_sequence(entry("j2-exotic"), 16)
    assert report.certified_degree == 8
    assert report.trivial_part.space.nonzero_dims() == {1: 1}
    assert report.four_term_exact.holds
    assert is_isomorphic_bounded(report.cokernel, entry("h-leq-1"),
                                 report.certified_degree).verdict.holds


def test_smith_free_presentation_agrees():
    """The sequence only depends on E, not on how E is presented."""
    fp = free_presentation(entry("j2-exotic"), 16)
    report = smith_sequence(fp, 16)
    assert report.trivial_part.space.nonzero_dims() == {1: 1}
