# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/unit/test_umod.py
"""Tests for presentations, materialization, predicates and maps."""

import pytest

from hvmod.types import PresentationError, TruncationError
from hvmod.umod import (
    Generator,
    Presentation,
    check_axioms,
    direct_sum,
    free_presentation,
    graded_dim,
    homomorphisms,
    identity_map,
    indecomposable_generators,
    is_hfree,
    is_isomorphic_bounded,
    is_nilclosed,
    is_nilpotent,
    is_reduced,
    materialize,
    quotient_by,
    submodule,
    validate,
)
from tests.fixtures.modules import (
    bad_adem,
    element,
    entry,
    sigma_t_h,
    unstable_violation,
)


@pytest.fixture
def hv():
    return entry("hv")


def test_free_module_on_one_generator(hv):
    m = materialize(hv, 4).module
    assert m.space.dims == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}
    assert [m.label(n, 0) for n in range(3)] == ["e", "t*e", "t^2*e"]


def test_rank_two_dims():
    m = materialize(entry("hv", "2"), 3).module
    assert m.space.dims == {0: 1, 1: 2, 2: 3, 3: 4}


def test_presentation_rejects_bad_tables():
    g = (Generator("g", 1),)
    with pytest.raises(PresentationError):
        Presentation(1, (Generator("g", 1), Generator("g", 2)))
    with pytest.raises(PresentationError):
        Presentation(1, (Generator("g", -1),))
    with pytest.raises(PresentationError, match="must vanish"):
        Presentation(1, g, ((0, 2, element((0, (2,)))),))
    with pytest.raises(PresentationError, match="has degree"):
        Presentation(1, g, ((0, 1, element((0, (2,)))),))
    with pytest.raises(PresentationError, match="given twice"):
        Presentation(1, g, ((0, 1, element((0, (1,)))),
                            (0, 1, element((0, (1,))))))


def test_validate_free_modules(hv):
    assert validate(hv, 10).holds
    assert validate(entry("hv", "2"), 6).certified_degree == 6
    assert validate(sigma_t_h(), 12).holds


def test_validate_reports_adem_witness():
    verdict = validate(bad_adem(), 12)
    assert verdict.status == "fails"
    w = verdict.witness
    assert (w.degree, w.element) == (2, "g")
    assert dict(w.data) == {"a": 1, "b": 2}
    assert w.condition == "Sq1 Sq2 = Sq3"


def test_adem_witness_reproduces():
    """Re-evaluating both sides on the witness shows the difference."""
    m = materialize(bad_adem(), 12).module
    w = validate(bad_adem(), 12).witness
    lhs = (m.sq_map(1, 4) @ m.sq_map(2, 2)).apply(w.vector)
    rhs = m.sq_map(3, 2).apply(w.vector)
    assert lhs != rhs


def test_check_axioms_instability():
    verdict = check_axioms(unstable_violation())
    assert verdict.status == "fails"
    assert verdict.witness.element == "x"
    assert verdict.witness.condition == "Sq1 x = 0 since 1 > 0"


def test_is_reduced(hv):
    assert is_reduced(hv, 8).holds
    assert is_reduced(hv, 8).certified_degree == 4
    verdict = is_reduced(entry("jv1"), 8)
    assert verdict.status == "fails"
    assert verdict.witness.degree == 1
    assert verdict.witness.element == "t*iota"


def test_is_nilpotent(hv):
    assert is_nilpotent(entry("sigma-h"), 8).holds
    verdict = is_nilpotent(hv, 8)
    assert verdict.status == "fails"
    assert verdict.witness.degree == 0


def test_is_nilclosed(hv):
    assert is_nilclosed(hv, 8).holds
    assert not is_nilclosed(entry("sigma-h"), 8).holds


def test_is_hfree(hv):
    assert is_hfree(hv, 8).holds
    assert is_hfree(entry("hv", "2"), 5).holds
    verdict = is_hfree(entry("jv1"), 8)
    assert verdict.status == "fails"
    assert verdict.witness.degree == 1
    assert verdict.witness.condition == "t * (t*iota) = 0"


def test_is_hfree_trivial_module():
    assert not is_hfree(entry("f2"), 6).holds


def test_graded_dim_of_quotient(hv):
    jv1 = entry("jv1")
    assert graded_dim(jv1, 4) == {0: 1, 1: 1, 2: 0, 3: 0, 4: 0}
    same = quotient_by(hv, [element((0, (2,)))], 8)
    assert graded_dim(same, 4) == graded_dim(jv1, 4)


def test_coordinates_of_relations_and_outsiders():
    jv1 = materialize(entry("jv1"), 4)
    assert jv1.coordinates(element((0, (2,)))) == (2, 0)
    h1 = materialize(entry("h-geq-1"), 4)
    assert h1.coordinates(element((0, (0,)))) is None
    assert h1.coordinates(element((0, (1,)))) == (1, 1)


def test_submodule_membership(hv):
    sub = submodule(hv, [element((0, (1,)))], 8)
    assert graded_dim(sub, 3) == {0: 0, 1: 1, 2: 1, 3: 1}
    with pytest.raises(PresentationError):
        submodule(entry("h-geq-1"), [element((0, (0,)))], 8)


def test_direct_sum(hv):
    total = direct_sum(hv, entry("sigma-h"))
    assert graded_dim(total, 3) == {0: 1, 1: 2, 2: 2, 3: 2}
    with pytest.raises(PresentationError):
        direct_sum(hv, entry("hv", "2"))


def test_indecomposables():
    m = materialize(entry("h-plus-sigma-h"), 6).module
    assert [d for d, _ in indecomposable_generators(m)] == [0, 1]


def test_free_presentation_of_augmentation_ideal():
    p = free_presentation(entry("h-geq-1"), 8)
    assert [g.degree for g in p.generators] == [1]
    assert p.is_free
    assert is_isomorphic_bounded(p, entry("tH"), 8).verdict.holds


def test_free_presentation_needs_room():
    with pytest.raises(TruncationError):
        free_presentation(sigma_t_h(), 3)


def test_identity_map(hv):
    m = materialize(hv, 6).module
    ident = identity_map(m)
    assert ident.check_linear() is None
    assert ident.is_bijective()


def test_homomorphisms_from_h_to_h(hv):
    maps = list(homomorphisms(hv, hv, 4))
    assert len(maps) == 2
    assert all(f.check_linear() is None for f in maps)


def test_homomorphisms_rank_mismatch(hv):
    with pytest.raises(ValueError):
        list(homomorphisms(hv, entry("hv", "2"), 4))


def test_iso_distinguishes_suspensions():
    """ΣH and tH are different as unstable modules."""
    verdict = is_isomorphic_bounded(entry("sigma-h"), entry("tH"), 8).verdict
    assert verdict.status == "fails"
    assert verdict.witness.degree == 1
    assert "Sq1" in verdict.witness.condition


def test_iso_finds_identity(hv):
    result = is_isomorphic_bounded(hv, hv, 8)
    assert result.verdict.holds
    assert result.iso is not None
    assert result.iso.is_bijective()
    assert result.iso.check_linear() is None


def test_iso_budget_is_reported():
    j2 = entry("j2-tensor")
    verdict = is_isomorphic_bounded(j2, j2, 8, budget=1).verdict
    assert verdict.status == "budget-exceeded"
    assert not verdict.holds
