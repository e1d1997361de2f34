# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/unit/test_f2lin.py
"""Tests for bitset linear algebra over F2."""

import pytest

from hvmod.f2lin import (
    Echelon,
    F2Matrix,
    GradedSpace,
    bits,
    independent,
    kernel_basis,
    make_module,
    rank,
    row_reduce,
    solve,
)


def test_bits_ascending():
    assert list(bits(0b10110)) == [1, 2, 4]
    assert list(bits(0)) == []


def test_from_lists_and_columns_agree():
    m = F2Matrix.from_lists([[1, 0, 1], [0, 1, 1]])
    assert m.columns() == (0b01, 0b10, 0b11)
    assert F2Matrix.from_columns([0b01, 0b10, 0b11], 2) == m
    assert m.to_lists() == [[1, 0, 1], [0, 1, 1]]


def test_matrix_rejects_bad_entries():
    with pytest.raises(ValueError):
        F2Matrix.from_lists([[1, 2]])
    with pytest.raises(ValueError):
        F2Matrix(1, 2, (0b100,))
    with pytest.raises(ValueError):
        F2Matrix.from_lists([[1, 0], [1]])


def test_apply_and_compose():
    m = F2Matrix.from_lists([[1, 1], [0, 1]])
    assert m.apply(0b01) == 0b01
    assert m.apply(0b10) == 0b11
    # (m @ m) = identity over F2
    assert m @ m == F2Matrix.identity(2)
    with pytest.raises(ValueError):
        m @ F2Matrix.zero(3, 1)


def test_transpose_and_stack():
    m = F2Matrix.from_lists([[1, 0, 1]])
    assert m.transpose().to_lists() == [[1], [0], [1]]
    stacked = m.stack(F2Matrix.from_lists([[0, 1, 0]]))
    assert stacked.to_lists() == [[1, 0, 1], [0, 1, 0]]


def test_rank_and_row_reduce():
    m = F2Matrix.from_lists([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert rank(m) == 2
    reduced, pivots = row_reduce(m.rows, 3)
    assert pivots == [0, 1]
    assert len(reduced) == 2


def test_kernel_basis():
    m = F2Matrix.from_lists([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    kernel = kernel_basis(m)
    assert kernel == [0b111]
    for v in kernel:
        assert m.apply(v) == 0


def test_kernel_of_empty_matrix_is_everything():
    assert kernel_basis(F2Matrix.zero(0, 3)) == [0b001, 0b010, 0b100]


def test_solve():
    m = F2Matrix.from_lists([[1, 1], [0, 1]])
    x = solve(m, 0b10)
    assert x is not None
    assert m.apply(x) == 0b10
    singular = F2Matrix.from_lists([[1, 1], [1, 1]])
    assert solve(singular, 0b01) is None


def test_echelon_coordinates_track_inputs():
    e = Echelon([0b011, 0b110])
    assert e.rank == 2
    assert e.coordinates(0b101) == 0b11
    assert e.coordinates(0b110) == 0b10
    assert e.coordinates(0b001) is None
    assert not e.add(0b101)
    assert e.inputs == 3


def test_independent_keeps_input_order():
    assert independent([0b01, 0b10, 0b11, 0b100]) == [0b01, 0b10, 0b100]


def test_graded_space_dims():
    space = GradedSpace(1, (("a",), (), ("b", "c")))
    assert space.top == 3
    assert space.dims == {1: 1, 2: 0, 3: 2}
    assert space.nonzero_dims() == {1: 1, 3: 2}
    assert space.dim(0) == 0
    assert space.total_dim == 3


def test_make_module_drops_zero_maps():
    sq1 = F2Matrix.from_lists([[1]])
    m = make_module({1: ["a"], 2: ["b"]}, 0, 2, 0,
                    {(1, 1): sq1, (1, 0): F2Matrix.zero(0, 0)}, {}, "M")
    assert set(m.sq) == {(1, 1)}
    assert m.sq_map(1, 1) == sq1
    assert m.sq_map(0, 2) == F2Matrix.identity(1)
    assert m.render(2, 1) == "b"
    with pytest.raises(ValueError):
        m.sq_map(1, 2)
    with pytest.raises(ValueError):
        m.t_map(0, 0)


def test_same_structure():
    sq1 = F2Matrix.from_lists([[1]])
    a = make_module({1: ["a"], 2: ["b"]}, 0, 2, 0, {(1, 1): sq1}, {})
    b = make_module({1: ["x"], 2: ["y"]}, 0, 2, 0, {(1, 1): sq1}, {})
    c = make_module({1: ["x"], 2: ["y"]}, 0, 2, 0, {}, {})
    assert a.same_structure(b)
    assert not a.same_structure(c)
