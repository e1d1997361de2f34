# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.06.09
# Copyright (C) 2025 HRDAG https://hrdag.org
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along
# with this program; if not, see <https://www.gnu.org/licenses/>.
#
# ------
# hvmod/src/hvmod/f2lin.py

"""Exact linear algebra over F2 on graded, finite-dimensional pieces.

Vectors are Python integers: bit k is the coordinate on basis vector k.
A matrix stores its rows the same way, so row i of an m x n matrix is an
integer below 2**n.  Elimination always picks the leftmost (lowest)
column as pivot, which makes every basis returned here deterministic.
"""

from bisect import insort
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field


def bits(v: int) -> Iterator[int]:
    """Indices of the set bits of v, ascending."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def parity(v: int) -> int:
    return v.bit_count() & 1


def lowest_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


@dataclass(frozen=True)
class F2Matrix:
    """Matrix over F2 with bitset rows; maps vectors of length ncols."""
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.rows) != self.nrows:
            raise ValueError(
                f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for row in self.rows:
            if row < 0 or row >= limit:
                raise ValueError(f"row {row:b} exceeds {self.ncols} columns")

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "F2Matrix":
        ncols = len(entries[0]) if entries else 0
        rows = []
        for line in entries:
            if len(line) != ncols:
                raise ValueError("ragged matrix")
            row = 0
            for j, entry in enumerate(line):
                if entry not in (0, 1):
                    raise ValueError(f"entry {entry} is not in F2")
                row |= entry << j
            rows.append(row)
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> "F2Matrix":
        rows = [0] * nrows
        for j, col in enumerate(columns):
            for i in bits(col):
                if i >= nrows:
                    raise ValueError(f"column {j} exceeds {nrows} rows")
                rows[i] |= 1 << j
        return cls(nrows, len(columns), tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> int:
        col = 0
        for i, row in enumerate(self.rows):
            if (row >> j) & 1:
                col |= 1 << i
        return col

    def columns(self) -> tuple[int, ...]:
        return tuple(self.column(j) for j in range(self.ncols))

    def apply(self, v: int) -> int:
        """Image of the column vector v."""
        out = 0
        for i, row in enumerate(self.rows):
            if parity(row & v):
                out |= 1 << i
        return out

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.ncols, self.nrows, self.columns())

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError(
                f"cannot compose {self.nrows}x{self.ncols} with "
                f"{other.nrows}x{other.ncols}")
        rows = []
        for row in self.rows:
            acc = 0
            for k in bits(row):
                acc ^= other.rows[k]
            rows.append(acc)
        return F2Matrix(self.nrows, other.ncols, tuple(rows))

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.nrows, self.ncols,
                        tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def stack(self, other: "F2Matrix") -> "F2Matrix":
        """Rows of self followed by rows of other."""
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return F2Matrix(self.nrows + other.nrows, self.ncols,
                        self.rows + other.rows)

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.ncols)]
                for i in range(self.nrows)]


def row_reduce(rows: Iterable[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    work = [r for r in rows if r]
    reduced: list[int] = []
    pivots: list[int] = []
    for col in range(ncols):
        mask = 1 << col
        hit = next((k for k, r in enumerate(work) if r & mask), None)
        if hit is None:
            continue
        pivot_row = work.pop(hit)
        work = [r ^ pivot_row if r & mask else r for r in work]
        reduced = [r ^ pivot_row if r & mask else r for r in reduced]
        reduced.append(pivot_row)
        pivots.append(col)
        work = [r for r in work if r]
    return reduced, pivots


def rank(m: F2Matrix) -> int:
    return len(row_reduce(m.rows, m.ncols)[1])


def kernel_basis(m: F2Matrix) -> list[int]:
    """Null space basis, one vector per pivot-free column, ascending."""
    reduced, pivots = row_reduce(m.rows, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, pivot in zip(reduced, pivots):
            if (row >> free) & 1:
                v |= 1 << pivot
        basis.append(v)
    return basis


def solve(m: F2Matrix, rhs: int) -> int | None:
    """Some x with m.apply(x) == rhs, or None when inconsistent."""
    echelon = Echelon()
    for col in m.columns():
        echelon.add(col)
    return echelon.coordinates(rhs)


class Echelon:
    """Incremental echelon basis that remembers how rows were combined.

    Every vector passed to ``add`` gets the next input index, whether or
    not it is independent; ``coordinates`` expresses a vector as a sum of
    inputs, as a bitmask over those indices.
    """

    def __init__(self, vectors: Iterable[int] = ()):
        self._rows: dict[int, tuple[int, int]] = {}
        self._pivots: list[int] = []
        self._count = 0
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def inputs(self) -> int:
        return self._count

    def reduce(self, v: int) -> tuple[int, int]:
        """Remainder of v and the inputs subtracted to reach it."""
        combo = 0
        for pivot in self._pivots:
            if (v >> pivot) & 1:
                row, used = self._rows[pivot]
                v ^= row
                combo ^= used
        return v, combo

    def add(self, v: int) -> bool:
        """Record v as the next input; True when it raised the rank."""
        index = self._count
        self._count += 1
        remainder, combo = self.reduce(v)
        if not remainder:
            return False
        pivot = lowest_bit(remainder)
        self._rows[pivot] = (remainder, combo ^ (1 << index))
        insort(self._pivots, pivot)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def coordinates(self, v: int) -> int | None:
        remainder, combo = self.reduce(v)
        return combo if remainder == 0 else None


def independent(vectors: Iterable[int]) -> list[int]:
    """The vectors that raise the rank, in input order."""
    echelon = Echelon()
    return [v for v in vectors if echelon.add(v)]


@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional pieces M^n for bottom <= n <= top, with labels."""
    bottom: int
    labels: tuple[tuple[str, ...], ...]

    @property
    def top(self) -> int:
        return self.bottom + len(self.labels) - 1

    def degrees(self) -> range:
        return range(self.bottom, self.top + 1)

    def dim(self, n: int) -> int:
        if n < self.bottom or n > self.top:
            return 0
        return len(self.labels[n - self.bottom])

    @property
    def dims(self) -> dict[int, int]:
        return {n: self.dim(n) for n in self.degrees()}

    @property
    def total_dim(self) -> int:
        return sum(len(ls) for ls in self.labels)

    def nonzero_dims(self) -> dict[int, int]:
        return {n: d for n, d in self.dims.items() if d}


@dataclass(frozen=True, eq=False)
class GradedModule:
    """A graded space with Sq^i and t_j actions, truncated at ``top``.

    ``sq[(i, n)]`` is Sq^i: M^n -> M^{n+i} for i >= 1 and ``mul[(j, n)]``
    is multiplication by t_{j+1}: M^n -> M^{n+1}.  Missing keys inside
    the truncation are zero maps.  ``rank`` is the rank of V; a plain
    A-module has rank 0.
    """
    space: GradedSpace
    rank: int
    sq: Mapping[tuple[int, int], F2Matrix] = field(default_factory=dict)
    mul: Mapping[tuple[int, int], F2Matrix] = field(default_factory=dict)
    name: str = ""

    @property
    def bottom(self) -> int:
        return self.space.bottom

    @property
    def top(self) -> int:
        return self.space.top

    def dim(self, n: int) -> int:
        return self.space.dim(n)

    def degrees(self) -> range:
        return self.space.degrees()

    def label(self, n: int, k: int) -> str:
        return self.space.labels[n - self.bottom][k]

    def render(self, n: int, v: int) -> str:
        terms = [self.label(n, k) for k in bits(v)]
        if not terms:
            return "0"
        if len(terms) == 1:
            return terms[0]
        return " + ".join(f"({t})" if " " in t else t for t in terms)

    def sq_map(self, i: int, n: int) -> F2Matrix:
        if i < 0:
            raise ValueError("negative Steenrod square")
        if i == 0:
            return F2Matrix.identity(self.dim(n))
        if n + i > self.top:
            raise ValueError(f"Sq{i} on degree {n} leaves the truncation "
                             f"{self.top}")
        found = self.sq.get((i, n))
        if found is not None:
            return found
        return F2Matrix.zero(self.dim(n + i), self.dim(n))

    def t_map(self, j: int, n: int) -> F2Matrix:
        if not 0 <= j < self.rank:
            raise ValueError(f"no variable t{j + 1} in rank {self.rank}")
        if n + 1 > self.top:
            raise ValueError(f"t on degree {n} leaves the truncation")
        found = self.mul.get((j, n))
        if found is not None:
            return found
        return F2Matrix.zero(self.dim(n + 1), self.dim(n))

    def is_zero(self) -> bool:
        return self.space.total_dim == 0

    def same_structure(self, other: "GradedModule") -> bool:
        """Equal dimensions and equal matrices in the stored bases."""
        if (self.rank, self.bottom, self.top) != (
                other.rank, other.bottom, other.top):
            return False
        if self.space.dims != other.space.dims:
            return False
        for n in self.degrees():
            for i in range(1, self.top - n + 1):
                if self.sq_map(i, n) != other.sq_map(i, n):
                    return False
            if n < self.top:
                for j in range(self.rank):
                    if self.t_map(j, n) != other.t_map(j, n):
                        return False
        return True


def make_module(labels: Mapping[int, Sequence[str]], bottom: int, top: int,
                rank: int, sq: Mapping[tuple[int, int], F2Matrix],
                mul: Mapping[tuple[int, int], F2Matrix],
                name: str = "") -> GradedModule:
    """Assemble a GradedModule, dropping zero matrices."""
    space = GradedSpace(bottom, tuple(tuple(labels.get(n, ()))
                                      for n in range(bottom, top + 1)))
    return GradedModule(
        space, rank,
        {key: m for key, m in sq.items() if not m.is_zero()},
        {key: m for key, m in mul.items() if not m.is_zero()},
        name,
    )
