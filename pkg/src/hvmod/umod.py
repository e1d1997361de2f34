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
# hvmod/src/hvmod/umod.py

"""Finitely presented unstable H*V-A-modules, their maps and predicates.

A presentation is a free H*V-module on named generators together with
Sq^i of each generator.  The Cartan formula extends the table to the
whole free module.  Optional submodule generators S and relations R cut
it down to (S + R) / R.  Everything is computed on the truncation to
degrees <= N, so every answer is a Verdict certified up to a degree.
"""

import logging
import re
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from itertools import product

from .f2lin import (
    Echelon,
    F2Matrix,
    GradedModule,
    bits,
    kernel_basis,
    lowest_bit,
    make_module,
    rank,
    row_reduce,
)
from .hv import Monomial, format_monomial, monomials_of_degree, sq_monomial
from .steenrod import adem_terms
from .steenrod import format_monomial as format_sq
from .types import (
    DEFAULT_BUDGET,
    DEFAULT_MAX_DEGREE,
    TRUNCATION_NOTE,
    BudgetExceeded,
    PresentationError,
    TruncationError,
    Verdict,
    Witness,
)

logger = logging.getLogger(__name__)

Term = tuple[int, Monomial]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


@dataclass(frozen=True)
class FreeElement:
    """A sum of terms t^a * g_k in a free H*V-module."""
    terms: frozenset[Term] = frozenset()

    @classmethod
    def generator(cls, k: int, rank: int) -> "FreeElement":
        return cls(frozenset({(k, (0,) * rank)}))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FreeElement") -> "FreeElement":
        return FreeElement(self.terms ^ other.terms)

    def times(self, mono: Monomial) -> "FreeElement":
        return FreeElement(frozenset(
            (k, tuple(a + b for a, b in zip(m, mono))) for k, m in self.terms))

    def shifted(self, offset: int) -> "FreeElement":
        return FreeElement(frozenset((k + offset, m) for k, m in self.terms))

    def sorted_terms(self) -> list[Term]:
        return sorted(self.terms, key=lambda t: (t[0], [-e for e in t[1]]))


def format_term(term: Term, generators: Sequence[Generator]) -> str:
    k, mono = term
    name = generators[k].name
    if not any(mono):
        return name
    return f"{format_monomial(mono)}*{name}"


@dataclass(frozen=True)
class Presentation:
    """Generators, their Steenrod squares, and optional sub/quotient data.

    ``sq_table`` holds (generator index, i, Sq^i g) for 1 <= i <= |g|;
    missing entries are zero.  ``subgens`` of None means the whole free
    module.
    """
    rank: int
    generators: tuple[Generator, ...]
    sq_table: tuple[tuple[int, int, FreeElement], ...] = ()
    subgens: tuple[FreeElement, ...] | None = None
    relations: tuple[FreeElement, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise PresentationError("rank must be non-negative")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError(f"duplicate generator names in {names}")
        for g in self.generators:
            if g.degree < 0:
                raise PresentationError(
                    f"generator {g.name} has negative degree {g.degree}")
        seen = set()
        for k, i, value in self.sq_table:
            if not 0 <= k < len(self.generators):
                raise PresentationError(f"no generator with index {k}")
            g = self.generators[k]
            if (k, i) in seen:
                raise PresentationError(f"Sq{i} {g.name} given twice")
            seen.add((k, i))
            if i < 1:
                raise PresentationError(f"Sq{i} {g.name}: need i >= 1")
            if i > g.degree:
                if value.is_zero():
                    continue
                raise PresentationError(
                    f"Sq{i} {g.name} must vanish since {i} > {g.degree}")
            found = self.degree_of(value)
            if found is not None and found != g.degree + i:
                raise PresentationError(
                    f"Sq{i} {g.name} has degree {found}, expected "
                    f"{g.degree + i}")
        for e in (self.subgens or ()) + self.relations:
            self.degree_of(e)

    def degree_of(self, e: FreeElement) -> int | None:
        """Degree of a homogeneous element; None for zero."""
        degrees = set()
        for k, mono in e.terms:
            if not 0 <= k < len(self.generators):
                raise PresentationError(f"no generator with index {k}")
            if len(mono) != self.rank or any(a < 0 for a in mono):
                raise PresentationError(f"bad monomial {mono}")
            degrees.add(self.generators[k].degree + sum(mono))
        if len(degrees) > 1:
            raise PresentationError(
                f"inhomogeneous element {self.format_element(e)}")
        return degrees.pop() if degrees else None

    @cached_property
    def _table(self) -> dict[tuple[int, int], FreeElement]:
        return {(k, i): value for k, i, value in self.sq_table}

    def sq_of(self, k: int, i: int) -> FreeElement:
        """Sq^i of generator k; Sq^0 is the generator itself."""
        if i == 0:
            return FreeElement.generator(k, self.rank)
        return self._table.get((k, i), FreeElement())

    @property
    def is_free(self) -> bool:
        return self.subgens is None and not self.relations

    def generator_index(self, name: str) -> int:
        for k, g in enumerate(self.generators):
            if g.name == name:
                return k
        raise PresentationError(f"unknown generator {name!r}")

    def format_element(self, e: FreeElement) -> str:
        if e.is_zero():
            return "0"
        return " + ".join(format_term(t, self.generators)
                          for t in e.sorted_terms())


def _sq_term(p: Presentation, i: int, term: Term) -> set[Term]:
    """Sq^i(t^a g) = sum_j Sq^j(t^a) Sq^{i-j}(g)."""
    k, mono = term
    out: set[Term] = set()
    for j in range(i + 1):
        powers = sq_monomial(j, mono)
        if not powers:
            continue
        rest = p.sq_of(k, i - j)
        for a in powers:
            for h, b in rest.terms:
                out ^= {(h, tuple(x + y for x, y in zip(a, b)))}
    return out


def free_basis(p: Presentation, n: int) -> tuple[Term, ...]:
    """Basis of the free module in degree n, by generator then monomial."""
    return tuple((k, mono) for k, g in enumerate(p.generators)
                 for mono in monomials_of_degree(p.rank, n - g.degree))


def free_module(p: Presentation, top: int
                ) -> tuple[GradedModule, dict[int, tuple[Term, ...]]]:
    basis = {n: free_basis(p, n) for n in range(top + 1)}
    index = {n: {term: k for k, term in enumerate(b)}
             for n, b in basis.items()}

    def vector(n: int, terms: set[Term]) -> int:
        v = 0
        for term in terms:
            v ^= 1 << index[n][term]
        return v

    sq, mul = {}, {}
    for n in range(top + 1):
        if not basis[n]:
            continue
        for i in range(1, top - n + 1):
            cols = [vector(n + i, _sq_term(p, i, t)) for t in basis[n]]
            sq[(i, n)] = F2Matrix.from_columns(cols, len(basis[n + i]))
        if n < top:
            for j in range(p.rank):
                cols = [1 << index[n + 1][(k, mono[:j] + (mono[j] + 1,)
                                           + mono[j + 1:])]
                        for k, mono in basis[n]]
                mul[(j, n)] = F2Matrix.from_columns(cols, len(basis[n + 1]))
    labels = {n: [format_term(t, p.generators) for t in b]
              for n, b in basis.items()}
    module = make_module(labels, 0, top, p.rank, sq, mul, name=p.name)
    return module, basis


def span_closure(module: GradedModule,
                 seeds: Mapping[int, Sequence[int]]) -> dict[int, list[int]]:
    """Smallest sub-H*V-A-module containing the seeds, degree by degree."""
    spans: dict[int, list[int]] = {}
    for n in module.degrees():
        vectors = list(seeds.get(n, ()))
        if n > module.bottom:
            for j in range(module.rank):
                t = module.t_map(j, n - 1)
                vectors += [t.apply(v) for v in spans[n - 1]]
        for i in range(1, n - module.bottom + 1):
            sq = module.sq_map(i, n - i)
            vectors += [sq.apply(v) for v in spans[n - i]]
        spans[n] = row_reduce(vectors, module.dim(n))[0]
    return spans


def _induced(module: GradedModule, basis: Mapping[int, Sequence[int]],
             coords: Callable[[int, int], int],
             labels: Mapping[int, Sequence[str]],
             rank: int, name: str) -> GradedModule:
    sq, mul = {}, {}
    for n in module.degrees():
        if not basis[n]:
            continue
        for i in range(1, module.top - n + 1):
            m = module.sq_map(i, n)
            cols = [coords(n + i, m.apply(v)) for v in basis[n]]
            sq[(i, n)] = F2Matrix.from_columns(cols, len(basis[n + i]))
        if n < module.top:
            for j in range(rank):
                m = module.t_map(j, n)
                cols = [coords(n + 1, m.apply(v)) for v in basis[n]]
                mul[(j, n)] = F2Matrix.from_columns(cols, len(basis[n + 1]))
    return make_module(labels, module.bottom, module.top, rank, sq, mul,
                       name=name)


@dataclass(frozen=True, eq=False)
class Inclusion:
    """A submodule with its inclusion into the ambient module."""
    module: GradedModule
    ambient: GradedModule
    maps: Mapping[int, F2Matrix]
    _echelons: dict[int, Echelon] = field(default_factory=dict, repr=False)

    def coordinates(self, n: int, v: int) -> int | None:
        """Coordinates of an ambient vector, or None when outside."""
        if self.module.dim(n) == 0:
            return 0 if v == 0 else None
        if n not in self._echelons:
            self._echelons[n] = Echelon(self.maps[n].columns())
        return self._echelons[n].coordinates(v)


@dataclass(frozen=True, eq=False)
class Projection:
    """A quotient module with its projection and a chosen section."""
    module: GradedModule
    source: GradedModule
    maps: Mapping[int, F2Matrix]
    sections: Mapping[int, F2Matrix]


def restrict(module: GradedModule, spans: Mapping[int, Sequence[int]],
             name: str = "", rank: int | None = None) -> Inclusion:
    """The submodule spanned degreewise by ``spans``, which must be closed."""
    echelons = {n: Echelon(spans.get(n, ())) for n in module.degrees()}
    basis = {n: list(spans.get(n, ())) for n in module.degrees()}
    for n, e in echelons.items():
        if e.rank != len(basis[n]):
            raise ValueError(f"dependent spanning set in degree {n}")

    def to_sub(n: int, v: int) -> int:
        found = echelons[n].coordinates(v)
        if found is None:
            raise ValueError(f"span in degree {n} is not closed")
        return found

    labels = {n: [module.render(n, v) for v in b] for n, b in basis.items()}
    sub = _induced(module, basis, to_sub, labels,
                   module.rank if rank is None else rank, name)
    maps = {n: F2Matrix.from_columns(b, module.dim(n))
            for n, b in basis.items()}
    return Inclusion(sub, module, maps, echelons)


def factor(module: GradedModule, spans: Mapping[int, Sequence[int]],
           name: str = "", rank: int | None = None) -> Projection:
    """Quotient by the closed submodule spanned by ``spans``.

    Representatives are the unit vectors, ascending, that are independent
    of the submodule.
    """
    echelons, reps, offsets = {}, {}, {}
    for n in module.degrees():
        e = Echelon()
        for v in spans.get(n, ()):
            e.add(v)
        offsets[n] = e.inputs
        chosen = []
        for k in range(module.dim(n)):
            if not e.contains(1 << k):
                e.add(1 << k)
                chosen.append(k)
        echelons[n], reps[n] = e, chosen

    def to_quotient(n: int, v: int) -> int:
        found = echelons[n].coordinates(v)
        assert found is not None
        return found >> offsets[n]

    basis = {n: [1 << k for k in ks] for n, ks in reps.items()}
    labels = {n: [module.label(n, k) for k in ks] for n, ks in reps.items()}
    quotient = _induced(module, basis, to_quotient, labels,
                        module.rank if rank is None else rank, name)
    maps = {n: F2Matrix.from_columns(
        [to_quotient(n, 1 << k) for k in range(module.dim(n))],
        len(reps[n])) for n in module.degrees()}
    sections = {n: F2Matrix.from_columns(b, module.dim(n))
                for n, b in basis.items()}
    return Projection(quotient, module, maps, sections)


def truncate(module: GradedModule, bottom: int, top: int,
             name: str | None = None) -> GradedModule:
    """Restrict to degrees in [bottom, top]."""
    labels = {n: [module.label(n, k) for k in range(module.dim(n))]
              for n in range(bottom, top + 1)}
    sq = {(i, n): m for (i, n), m in module.sq.items()
          if bottom <= n and n + i <= top}
    mul = {(j, n): m for (j, n), m in module.mul.items()
           if bottom <= n and n + 1 <= top}
    return make_module(labels, bottom, top, module.rank, sq, mul,
                       module.name if name is None else name)


@dataclass(frozen=True, eq=False)
class Materialized:
    """A presentation computed out to degree ``top``."""
    presentation: Presentation
    top: int
    free: GradedModule
    basis: Mapping[int, tuple[Term, ...]]
    inclusion: Inclusion
    projection: Projection

    @property
    def module(self) -> GradedModule:
        return self.projection.module

    def free_vector(self, e: FreeElement) -> tuple[int | None, int]:
        n = self.presentation.degree_of(e)
        if n is None:
            return None, 0
        if n > self.top:
            raise TruncationError(f"degree {n} exceeds truncation {self.top}")
        index = {term: k for k, term in enumerate(self.basis[n])}
        v = 0
        for term in e.terms:
            v ^= 1 << index[term]
        return n, v

    def coordinates(self, e: FreeElement) -> tuple[int, int] | None:
        """Degree and module vector of e, or None when e is not in S + R."""
        n, v = self.free_vector(e)
        if n is None:
            return 0, 0
        sub = self.inclusion.coordinates(n, v)
        if sub is None:
            return None
        return n, self.projection.maps[n].apply(sub)

    def lift(self, n: int, v: int) -> int:
        return self.inclusion.maps[n].apply(
            self.projection.sections[n].apply(v))


def _seeds(p: Presentation, top: int, elements: Sequence[FreeElement],
           basis: Mapping[int, tuple[Term, ...]]) -> dict[int, list[int]]:
    seeds: dict[int, list[int]] = {}
    for e in elements:
        n = p.degree_of(e)
        if n is None or n > top:
            continue
        index = {term: k for k, term in enumerate(basis[n])}
        v = 0
        for term in e.terms:
            v ^= 1 << index[term]
        seeds.setdefault(n, []).append(v)
    return seeds


@lru_cache(maxsize=128)
def materialize(p: Presentation, top: int) -> Materialized:
    if top < 0:
        raise TruncationError("truncation degree must be non-negative")
    free, basis = free_module(p, top)
    if p.subgens is None:
        whole = {n: [1 << k for k in range(free.dim(n))]
                 for n in free.degrees()}
        sr = whole
    else:
        sr = span_closure(free, _seeds(p, top, p.subgens + p.relations,
                                       basis))
    r = span_closure(free, _seeds(p, top, p.relations, basis))
    inclusion = restrict(free, sr, name=p.name)
    r_coords: dict[int, list[int]] = {}
    for n, vectors in r.items():
        r_coords[n] = []
        for v in vectors:
            found = inclusion.coordinates(n, v)
            assert found is not None
            r_coords[n].append(found)
    projection = factor(inclusion.module, r_coords, name=p.name)
    logger.debug("materialized %s to degree %d: dims %s", p.name or "module",
                 top, projection.module.space.nonzero_dims())
    return Materialized(p, top, free, basis, inclusion, projection)


def as_module(e: "Presentation | GradedModule", top: int) -> GradedModule:
    if isinstance(e, Presentation):
        return materialize(e, top).module
    if e.top > top:
        return truncate(e, e.bottom, top)
    return e


def _first_column(diff: F2Matrix) -> int | None:
    acc = 0
    for row in diff.rows:
        acc |= row
    return lowest_bit(acc) if acc else None


def _adem_rhs(a: int, b: int) -> str:
    terms = adem_terms(a, b)
    return " + ".join(format_sq(t) for t in terms) if terms else "0"


def _adem_side(m: GradedModule, a: int, b: int, n: int) -> F2Matrix:
    out = F2Matrix.zero(m.dim(n + a + b), m.dim(n))
    for term in adem_terms(a, b):
        if len(term) == 1:
            out = out + m.sq_map(term[0], n)
        else:
            x, c = term
            out = out + m.sq_map(x, n + c) @ m.sq_map(c, n)
    return out


def check_axioms(m: GradedModule) -> Verdict:
    """Unstable H*V-A-module axioms on every degree of the truncation."""
    top = m.top
    for n in m.degrees():
        if not m.dim(n):
            continue
        for i in range(max(n + 1, 1), top - n + 1):
            k = _first_column(m.sq_map(i, n))
            if k is not None:
                return Verdict.failing(n, Witness(
                    n, m.label(n, k), f"Sq{i} x = 0 since {i} > {n}",
                    1 << k, (("i", i),)), TRUNCATION_NOTE)
        if n < top:
            for j in range(m.rank):
                tj = f"t{j + 1}" if m.rank > 1 else "t"
                for i in range(1, top - n):
                    lhs = m.sq_map(i, n + 1) @ m.t_map(j, n)
                    rhs = (m.t_map(j, n + i) @ m.sq_map(i, n)
                           + m.t_map(j, n + i) @ m.t_map(j, n + i - 1)
                           @ m.sq_map(i - 1, n))
                    k = _first_column(lhs + rhs)
                    if k is not None:
                        return Verdict.failing(n, Witness(
                            n, m.label(n, k),
                            f"Sq{i}({tj} x) = {tj} Sq{i} x + {tj}^2 "
                            f"Sq{i - 1} x", 1 << k,
                            (("i", i), ("j", j + 1))), TRUNCATION_NOTE)
        if n + 2 <= top:
            for j in range(m.rank):
                for h in range(j + 1, m.rank):
                    lhs = m.t_map(j, n + 1) @ m.t_map(h, n)
                    rhs = m.t_map(h, n + 1) @ m.t_map(j, n)
                    k = _first_column(lhs + rhs)
                    if k is not None:
                        return Verdict.failing(n, Witness(
                            n, m.label(n, k),
                            f"t{j + 1} t{h + 1} x = t{h + 1} t{j + 1} x",
                            1 << k), TRUNCATION_NOTE)
        pairs = sorted(((a, b) for b in range(1, top - n + 1)
                        for a in range(1, min(2 * b, top - n - b + 1))),
                       key=lambda ab: (ab[0] + ab[1], ab[1]))
        for a, b in pairs:
            lhs = m.sq_map(a, n + b) @ m.sq_map(b, n)
            k = _first_column(lhs + _adem_side(m, a, b, n))
            if k is not None:
                return Verdict.failing(n, Witness(
                    n, m.label(n, k), f"Sq{a} Sq{b} = {_adem_rhs(a, b)}",
                    1 << k, (("a", a), ("b", b))), TRUNCATION_NOTE)
    return Verdict.holding(top, TRUNCATION_NOTE)


def validate(e: Presentation, max_degree: int = DEFAULT_MAX_DEGREE
             ) -> Verdict:
    return check_axioms(materialize(e, max_degree).module)


def graded_dim(e: "Presentation | GradedModule",
               max_degree: int = DEFAULT_MAX_DEGREE) -> dict[int, int]:
    return as_module(e, max_degree).space.dims


def is_reduced(e: "Presentation | GradedModule",
               max_degree: int = DEFAULT_MAX_DEGREE) -> Verdict:
    """Sq0 injective on degrees <= N/2."""
    m = as_module(e, max_degree)
    half = m.top // 2
    for n in m.degrees():
        if n < 1 or 2 * n > m.top or not m.dim(n):
            continue
        kernel = kernel_basis(m.sq_map(n, n))
        if kernel:
            v = kernel[0]
            return Verdict.failing(n, Witness(
                n, m.render(n, v), f"Sq{n} x = 0", v), TRUNCATION_NOTE)
    return Verdict.holding(half, TRUNCATION_NOTE)


def is_nilpotent(e: "Presentation | GradedModule",
                 max_degree: int = DEFAULT_MAX_DEGREE) -> Verdict:
    """Every element of degree <= N/2 is killed by an iterate of Sq0."""
    m = as_module(e, max_degree)
    half = m.top // 2
    for n in m.degrees():
        if n > half or not m.dim(n):
            continue
        if n <= 0:
            return Verdict.failing(n, Witness(
                n, m.label(n, 0), "Sq0 is the identity in degree 0", 1),
                TRUNCATION_NOTE)
        composite = F2Matrix.identity(m.dim(n))
        d = n
        while 2 * d <= m.top and not composite.is_zero():
            composite = m.sq_map(d, d) @ composite
            d *= 2
        k = _first_column(composite)
        if k is not None:
            return Verdict.failing(n, Witness(
                n, m.label(n, k), f"Sq0 iterates survive to degree {d}",
                1 << k), TRUNCATION_NOTE)
    return Verdict.holding(half, TRUNCATION_NOTE)


def is_nilclosed(e: "Presentation | GradedModule",
                 max_degree: int = DEFAULT_MAX_DEGREE) -> Verdict:
    """Reduced, and Ker Sq1 = Im Sq0 where Sq1 lands inside the truncation."""
    m = as_module(e, max_degree)
    reduced = is_reduced(m, m.top)
    if not reduced.holds:
        return reduced
    for n in m.degrees():
        if n < 2 or 2 * n - 1 > m.top or not m.dim(n):
            continue
        kernel = kernel_basis(m.sq_map(n - 1, n))
        image = Echelon()
        if n % 2 == 0:
            for col in m.sq_map(n // 2, n // 2).columns():
                image.add(col)
        for v in kernel:
            if not image.contains(v):
                condition = (f"Sq{n - 1} x = 0 but x is not Sq{n // 2} of "
                             "anything" if n % 2 == 0 else
                             f"Sq{n - 1} x = 0 in odd degree")
                return Verdict.failing(n, Witness(
                    n, m.render(n, v), condition, v), TRUNCATION_NOTE)
    return Verdict.holding(m.top // 2, TRUNCATION_NOTE)


def apply_monomial(m: GradedModule, mono: Monomial, n: int, v: int) -> int:
    """t^mono * v for v in degree n."""
    for j, power in enumerate(mono):
        for _ in range(power):
            v = m.t_map(j, n).apply(v)
            n += 1
    return v


def decomposables(m: GradedModule) -> dict[int, list[int]]:
    """Degreewise basis of the augmentation ideal times the module."""
    spans = {}
    for n in m.degrees():
        vectors: list[int] = []
        if n > m.bottom:
            for j in range(m.rank):
                vectors += m.t_map(j, n - 1).columns()
        spans[n] = row_reduce(vectors, m.dim(n))[0]
    return spans


def indecomposable_generators(m: GradedModule) -> list[tuple[int, int]]:
    """(degree, vector) lifts of a basis of the quotient by decomposables."""
    gens = []
    for n, span in decomposables(m).items():
        e = Echelon(span)
        for k in range(m.dim(n)):
            if not e.contains(1 << k):
                e.add(1 << k)
                gens.append((n, 1 << k))
    return gens


def _cover(m: GradedModule, gens: Sequence[tuple[int, int]], n: int
           ) -> tuple[list[Term], F2Matrix]:
    terms, cols = [], []
    for k, (d, v) in enumerate(gens):
        for mono in monomials_of_degree(m.rank, n - d):
            terms.append((k, mono))
            cols.append(apply_monomial(m, mono, d, v))
    return terms, F2Matrix.from_columns(cols, m.dim(n))


def is_hfree(e: "Presentation | GradedModule",
             max_degree: int = DEFAULT_MAX_DEGREE) -> Verdict:
    """Free over H*V, compared against the free cover on lifted generators."""
    m = as_module(e, max_degree)
    if m.rank == 0:
        return Verdict.holding(m.top, TRUNCATION_NOTE)
    if m.rank == 1:
        for n in m.degrees():
            if n >= m.top or not m.dim(n):
                continue
            kernel = kernel_basis(m.t_map(0, n))
            if kernel:
                v = kernel[0]
                element = m.render(n, v)
                return Verdict.failing(n, Witness(
                    n, element, f"t * ({element}) = 0", v), TRUNCATION_NOTE)
        return Verdict.holding(m.top, TRUNCATION_NOTE)
    gens = indecomposable_generators(m)
    for n in m.degrees():
        terms, cover = _cover(m, gens, n)
        kernel = kernel_basis(cover)
        if kernel:
            v = kernel[0]
            names = [f"({m.render(d, g)})" for d, g in gens]
            parts = []
            for idx in bits(v):
                k, mono = terms[idx]
                prefix = "" if not any(mono) else f"{format_monomial(mono)}*"
                parts.append(prefix + names[k])
            return Verdict.failing(n, Witness(
                n, " + ".join(parts), "relation among lifted generators", v),
                TRUNCATION_NOTE)
    return Verdict.holding(m.top, TRUNCATION_NOTE)


GENERATOR_NAME = re.compile(r"[A-Za-z_]\w*")
VARIABLE_NAME = re.compile(r"t\d*")


def _generator_name(label: str, taken: set[str], k: int) -> str:
    if (GENERATOR_NAME.fullmatch(label) and not VARIABLE_NAME.fullmatch(label)
            and label not in taken):
        return label
    name = f"g{k + 1}"
    while name in taken:
        name += "_"
    return name


def free_presentation(e: "Presentation | GradedModule",
                      max_degree: int = DEFAULT_MAX_DEGREE,
                      name: str | None = None) -> Presentation:
    """A plain free presentation of an H*V-free module.

    Generators are lifted from the indecomposable quotient; Sq^i of each
    is solved in the basis t^a g_k.  The materialized result has the
    free cover columns as its basis, in the same order.
    """
    m = as_module(e, max_degree)
    gens = indecomposable_generators(m)
    taken: set[str] = set()
    generators = []
    for k, (d, v) in enumerate(gens):
        if 2 * d > m.top:
            raise TruncationError(
                f"generator in degree {d} needs truncation >= {2 * d}, "
                f"got {m.top}")
        label = _generator_name(m.render(d, v), taken, k)
        taken.add(label)
        generators.append(Generator(label, d))
    solvers: dict[int, tuple[list[Term], Echelon]] = {}
    table = []
    for k, (d, v) in enumerate(gens):
        for i in range(1, d + 1):
            n = d + i
            if n not in solvers:
                terms, cover = _cover(m, gens, n)
                echelon = Echelon(cover.columns())
                if echelon.rank != len(terms):
                    raise PresentationError(
                        f"{m.name or 'module'} is not free over H*V in "
                        f"degree {n}")
                solvers[n] = (terms, echelon)
            terms, echelon = solvers[n]
            combo = echelon.coordinates(m.sq_map(i, d).apply(v))
            if combo is None:
                raise PresentationError(
                    f"lifted generators do not span degree {n}")
            value = FreeElement(frozenset(terms[idx] for idx in bits(combo)))
            if not value.is_zero():
                table.append((k, i, value))
    logger.debug("free presentation with generators %s",
                 [(g.name, g.degree) for g in generators])
    return Presentation(m.rank, tuple(generators), tuple(table),
                        name=m.name if name is None else name)


@dataclass(frozen=True, eq=False)
class GradedMap:
    """Degreewise matrices between truncated modules."""
    source: GradedModule
    target: GradedModule
    matrices: Mapping[int, F2Matrix]

    @property
    def top(self) -> int:
        return min(self.source.top, self.target.top)

    def at(self, n: int) -> F2Matrix:
        found = self.matrices.get(n)
        if found is not None:
            return found
        return F2Matrix.zero(self.target.dim(n), self.source.dim(n))

    def degrees(self) -> range:
        return range(min(self.source.bottom, self.target.bottom),
                     self.top + 1)

    def is_injective(self, upto: int | None = None) -> bool:
        top = self.top if upto is None else min(upto, self.top)
        return all(rank(self.at(n)) == self.source.dim(n)
                   for n in self.degrees() if n <= top)

    def is_bijective(self) -> bool:
        return all(self.source.dim(n) == self.target.dim(n)
                   and rank(self.at(n)) == self.source.dim(n)
                   for n in self.degrees())

    def check_linear(self) -> Witness | None:
        """First element where the map fails to commute with Sq or t."""
        src, tgt = self.source, self.target
        for n in self.degrees():
            if not src.dim(n):
                continue
            for i in range(1, self.top - n + 1):
                diff = (self.at(n + i) @ src.sq_map(i, n)
                        + tgt.sq_map(i, n) @ self.at(n))
                k = _first_column(diff)
                if k is not None:
                    return Witness(n, src.label(n, k),
                                   f"f(Sq{i} x) = Sq{i} f(x)", 1 << k)
            if n < self.top:
                for j in range(src.rank):
                    diff = (self.at(n + 1) @ src.t_map(j, n)
                            + tgt.t_map(j, n) @ self.at(n))
                    k = _first_column(diff)
                    if k is not None:
                        return Witness(n, src.label(n, k),
                                       f"f(t{j + 1} x) = t{j + 1} f(x)",
                                       1 << k)
        return None

    def to_lists(self) -> dict[int, list[list[int]]]:
        return {n: self.at(n).to_lists() for n in self.degrees()
                if self.source.dim(n)}


def identity_map(m: GradedModule) -> GradedMap:
    return GradedMap(m, m, {n: F2Matrix.identity(m.dim(n))
                            for n in m.degrees()})


@dataclass
class _Degree:
    """Precomputed data for extending a map through one source degree."""
    ops: list[tuple[str, int, int, int]]
    relations: list[int]
    generators: list[int]
    expressions: list[int]


class _HomSearch:
    """Depth-first search over images of module generators, degree by degree.

    Images of t_j x and Sq^i x are forced by lower degrees; only the
    images of the A-module generators in each degree are enumerated.
    """

    def __init__(self, source: GradedModule, target: GradedModule, top: int,
                 iso: bool, budget: int):
        self.source = source
        self.target = target
        self.top = min(top, source.top, target.top)
        self.bottom = min(source.bottom, target.bottom)
        self.iso = iso
        self.budget = budget
        self.steps = 0
        self.reached = self.bottom - 1
        self.plan = {n: self._plan(n) for n in range(self.bottom,
                                                     self.top + 1)}

    def _plan(self, n: int) -> _Degree:
        src = self.source
        ops: list[tuple[str, int, int, int]] = []
        vectors: list[int] = []
        if src.dim(n):
            if n - 1 >= src.bottom:
                for j in range(src.rank):
                    t = src.t_map(j, n - 1)
                    for b in range(src.dim(n - 1)):
                        ops.append(("t", j, n - 1, b))
                        vectors.append(t.column(b))
            for i in range(1, n - src.bottom + 1):
                sq = src.sq_map(i, n - i)
                for b in range(src.dim(n - i)):
                    ops.append(("sq", i, n - i, b))
                    vectors.append(sq.column(b))
        echelon = Echelon()
        relations = []
        for idx, v in enumerate(vectors):
            remainder, combo = echelon.reduce(v)
            if remainder == 0:
                relations.append(combo | (1 << idx))
            echelon.add(v)
        generators = []
        for k in range(src.dim(n)):
            if not echelon.contains(1 << k):
                echelon.add(1 << k)
                generators.append(k)
        expressions = []
        for k in range(src.dim(n)):
            combo = echelon.coordinates(1 << k)
            assert combo is not None
            expressions.append(combo)
        return _Degree(ops, relations, generators, expressions)

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(
                f"map search exceeded budget of {self.budget} assignments")

    def _forced(self, n: int, maps: dict[int, F2Matrix]) -> list[int] | None:
        plan = self.plan[n]
        images = []
        for kind, i, m, b in plan.ops:
            col = maps[m].column(b)
            if kind == "t":
                images.append(self.target.t_map(i, m).apply(col))
            else:
                images.append(self.target.sq_map(i, m).apply(col))
        for mask in plan.relations:
            acc = 0
            for idx in bits(mask):
                acc ^= images[idx]
            if acc:
                return None
        return images

    def run(self) -> Iterator[GradedMap]:
        yield from self._extend(self.bottom, {})

    def _extend(self, n: int, maps: dict[int, F2Matrix]
                ) -> Iterator[GradedMap]:
        if n > self.top:
            yield GradedMap(self.source, self.target, dict(maps))
            return
        sdim, tdim = self.source.dim(n), self.target.dim(n)
        if self.iso and sdim != tdim:
            return
        forced = self._forced(n, maps)
        if forced is None:
            return
        plan = self.plan[n]
        for choice in product(range(1 << tdim), repeat=len(plan.generators)):
            self._tick()
            images = forced + list(choice)
            cols = []
            for combo in plan.expressions:
                acc = 0
                for idx in bits(combo):
                    acc ^= images[idx]
                cols.append(acc)
            matrix = F2Matrix.from_columns(cols, tdim)
            if self.iso and rank(matrix) != sdim:
                continue
            self.reached = max(self.reached, n)
            maps[n] = matrix
            yield from self._extend(n + 1, maps)
            del maps[n]


def homomorphisms(e: "Presentation | GradedModule",
                  f: "Presentation | GradedModule",
                  max_degree: int = DEFAULT_MAX_DEGREE,
                  budget: int = DEFAULT_BUDGET) -> Iterator[GradedMap]:
    """All H*V-A-linear maps on the truncation, in a fixed order."""
    source, target = as_module(e, max_degree), as_module(f, max_degree)
    if source.rank != target.rank:
        raise ValueError(f"rank mismatch: {source.rank} vs {target.rank}")
    yield from _HomSearch(source, target, max_degree, False, budget).run()


@dataclass(frozen=True, eq=False)
class IsoResult:
    verdict: Verdict
    iso: GradedMap | None = None


def _profile_mismatch(a: GradedModule, b: GradedModule, top: int
                      ) -> Witness | None:
    low = min(a.bottom, b.bottom)
    for n in range(low, top + 1):
        if a.dim(n) != b.dim(n):
            return Witness(n, "", f"dimension in degree {n}: "
                           f"{a.dim(n)} vs {b.dim(n)}")
    da, db = decomposables(a), decomposables(b)
    for n in range(low, top + 1):
        qa = a.dim(n) - len(da.get(n, ()))
        qb = b.dim(n) - len(db.get(n, ()))
        if qa != qb:
            return Witness(n, "", f"indecomposables in degree {n}: "
                           f"{qa} vs {qb}")
    for n in range(low, top + 1):
        if not a.dim(n):
            continue
        for i in range(1, top - n + 1):
            ra, rb = rank(a.sq_map(i, n)), rank(b.sq_map(i, n))
            if ra != rb:
                return Witness(n, f"Sq{i}", f"rank of Sq{i} on degree {n}: "
                               f"{ra} vs {rb}")
        if n < top:
            for j in range(a.rank):
                ra, rb = rank(a.t_map(j, n)), rank(b.t_map(j, n))
                if ra != rb:
                    return Witness(n, f"t{j + 1}", f"rank of t{j + 1} on "
                                   f"degree {n}: {ra} vs {rb}")
    return None


def is_isomorphic_bounded(e: "Presentation | GradedModule",
                          f: "Presentation | GradedModule",
                          max_degree: int = DEFAULT_MAX_DEGREE,
                          budget: int = DEFAULT_BUDGET) -> IsoResult:
    a, b = as_module(e, max_degree), as_module(f, max_degree)
    top = min(max_degree, a.top, b.top)
    if a.rank != b.rank:
        return IsoResult(Verdict.failing(0, Witness(
            0, "", f"rank of V: {a.rank} vs {b.rank}"), TRUNCATION_NOTE))
    mismatch = _profile_mismatch(a, b, top)
    if mismatch is not None:
        return IsoResult(Verdict.failing(mismatch.degree, mismatch,
                                         TRUNCATION_NOTE))
    search = _HomSearch(a, b, top, True, budget)
    try:
        iso = next(search.run(), None)
    except BudgetExceeded as exc:
        logger.debug("isomorphism search stopped: %s", exc)
        return IsoResult(Verdict("budget-exceeded", search.reached,
                                 None, str(exc)))
    logger.debug("isomorphism search used %d assignments", search.steps)
    if iso is None:
        degree = search.reached + 1
        return IsoResult(Verdict.failing(degree, Witness(
            degree, "", f"no H*V-A-linear isomorphism extends to degree "
            f"{degree}"), TRUNCATION_NOTE))
    return IsoResult(Verdict.holding(top, TRUNCATION_NOTE), iso)


def _check_members(e: Presentation, gens: Sequence[FreeElement],
                   max_degree: int) -> None:
    m = materialize(e, max_degree)
    for g in gens:
        n = e.degree_of(g)
        if n is None or n > max_degree:
            continue
        if m.coordinates(g) is None:
            raise PresentationError(
                f"{e.format_element(g)} is not an element of "
                f"{e.name or 'the module'}")


def submodule(e: Presentation, gens: Sequence[FreeElement],
              max_degree: int = DEFAULT_MAX_DEGREE,
              name: str = "") -> Presentation:
    """The sub-H*V-A-module generated by homogeneous elements of e."""
    _check_members(e, gens, max_degree)
    return replace(e, subgens=tuple(gens), name=name or e.name)


def quotient_by(e: Presentation, gens: Sequence[FreeElement],
                max_degree: int = DEFAULT_MAX_DEGREE,
                name: str = "") -> Presentation:
    """e divided by the submodule generated by homogeneous elements."""
    _check_members(e, gens, max_degree)
    return replace(e, relations=e.relations + tuple(gens),
                   name=name or e.name)


def direct_sum(p: Presentation, q: Presentation, name: str = ""
               ) -> Presentation:
    if p.rank != q.rank:
        raise PresentationError(f"rank mismatch: {p.rank} vs {q.rank}")
    offset = len(p.generators)
    table = p.sq_table + tuple((k + offset, i, v.shifted(offset))
                               for k, i, v in q.sq_table)
    subgens = None
    if p.subgens is not None or q.subgens is not None:
        left = p.subgens if p.subgens is not None else tuple(
            FreeElement.generator(k, p.rank) for k in range(offset))
        right = q.subgens if q.subgens is not None else tuple(
            FreeElement.generator(k, q.rank)
            for k in range(len(q.generators)))
        subgens = left + tuple(v.shifted(offset) for v in right)
    relations = p.relations + tuple(v.shifted(offset) for v in q.relations)
    return Presentation(p.rank, p.generators + q.generators, table, subgens,
                        relations, name or f"{p.name} + {q.name}")
