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
# hvmod/src/hvmod/classify.py

"""Classifiers for free H*V-A-modules with small quotient E-bar."""

import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Any, Literal

from .catalog import (
    Factors,
    catalog,
    factors_of,
    hv_presentation,
    sigma_u_presentation,
)
from .f2lin import F2Matrix, GradedModule, kernel_basis
from .functors import induced_bar, quotient_E
from .hv import (
    LinearForm,
    PolyElement,
    dickson_top,
    divide_linear,
    factor_linear,
    format_poly,
    monomials_of_degree,
    one_plus_product,
)
from .types import (
    DEFAULT_BUDGET,
    DEFAULT_MAX_DEGREE,
    TRUNCATION_NOTE,
    ClassificationError,
    Verdict,
    Witness,
)
from .umod import (
    FreeElement,
    Generator,
    GradedMap,
    Presentation,
    as_module,
    check_axioms,
    direct_sum,
    free_presentation,
    is_hfree,
    is_isomorphic_bounded,
    materialize,
    restrict,
)

logger = logging.getLogger(__name__)

J2Class = Literal["tensor", "exotic"]


@dataclass(frozen=True)
class SigmaNClass:
    """Σ^d u H*V with u a product of nonzero linear forms."""
    d: int
    factors: Factors
    rank: int

    @property
    def n(self) -> int:
        return self.d + sum(mult for _, mult in self.factors)

    @property
    def u(self) -> PolyElement:
        out = PolyElement.one(self.rank)
        for form, mult in self.factors:
            out = out * form.as_poly() ** mult
        return out

    def presentation(self) -> Presentation:
        return sigma_u_presentation(self.d, self.factors, self.rank)

    def __str__(self) -> str:
        return self.presentation().name

    def to_dict(self) -> dict[str, Any]:
        return {
            "class": str(self),
            "d": self.d,
            "u": format_poly(self.u),
            "factors": [[str(form), mult] for form, mult in self.factors],
            "rank": self.rank,
        }


@dataclass(frozen=True)
class SplitClass:
    """H*V + Σ^d u H*V."""
    sigma: SigmaNClass

    def __str__(self) -> str:
        return f"{hv_presentation(self.sigma.rank).name} + {self.sigma}"

    def to_dict(self) -> dict[str, Any]:
        return {"class": str(self), "trivial": "H*V",
                "sigma": self.sigma.to_dict()}


def _refuse(message: str, degree: int, element: str,
            condition: str) -> ClassificationError:
    return ClassificationError(message, Verdict.failing(
        degree, Witness(degree, element, condition), TRUNCATION_NOTE))


def _require_hfree(m: GradedModule) -> None:
    verdict = is_hfree(m)
    if not verdict.holds:
        raise ClassificationError(f"{m.name or 'module'} is not free over "
                                  "H*V", verdict)


def _quotient_degrees(m: GradedModule) -> list[int]:
    bar = quotient_E(m)
    return [n for n in bar.degrees() for _ in range(bar.dim(n))]


def _total_square(p: Presentation, k: int) -> list[PolyElement]:
    """Pieces p_i of Sq(g_k) = sum p_i g_k, dropping other generators."""
    g = p.generators[k]
    pieces = [PolyElement.one(p.rank)]
    for i in range(1, g.degree + 1):
        monos = frozenset(mono for h, mono in p.sq_of(k, i).terms if h == k)
        pieces.append(PolyElement(p.rank, monos))
    return pieces


def _classify_generator(p: Presentation, k: int) -> SigmaNClass:
    """Factor the total square of a single free generator."""
    g = p.generators[k]
    pieces = _total_square(p, k)
    top = max(i for i, piece in enumerate(pieces) if not piece.is_zero())
    factors = factor_linear(pieces[top]) if top else ()
    if factors is None:
        raise _refuse(
            "total square is not a product of (1 + form)", g.degree + top,
            f"Sq{top} {g.name}",
            f"{format_poly(pieces[top])} is not a product of linear forms")
    rebuilt = one_plus_product(factors, p.rank)
    for i, piece in enumerate(pieces):
        expected = rebuilt[i] if i < len(rebuilt) else \
            PolyElement.zero(p.rank)
        if piece != expected:
            raise _refuse(
                "total square is not a product of (1 + form)",
                g.degree + i, f"Sq{i} {g.name}",
                f"Sq{i} {g.name} = ({format_poly(piece)}) {g.name}, "
                f"expected ({format_poly(expected)}) {g.name}")
    return SigmaNClass(g.degree - top, factors, p.rank)


def _confirm(p: Presentation, candidate: Presentation, max_degree: int,
             budget: int, what: str) -> None:
    result = is_isomorphic_bounded(candidate, p, max_degree, budget)
    if result.verdict.status == "fails":
        raise ClassificationError(f"{what} does not rebuild the module",
                                  result.verdict)
    if not result.verdict.holds:
        logger.debug("%s round trip undecided: %s", what,
                     result.verdict.note)


def classify_sigma_n(e: "Presentation | GradedModule",
                     max_degree: int = DEFAULT_MAX_DEGREE,
                     budget: int = DEFAULT_BUDGET) -> SigmaNClass:
    """(d, u) with E = Σ^d u H*V, when E is free and E-bar = Σ^n F2."""
    m = as_module(e, max_degree)
    _require_hfree(m)
    degrees = _quotient_degrees(m)
    if len(degrees) != 1:
        raise _refuse("E-bar is not one-dimensional", min(degrees, default=0),
                      "E-bar", f"E-bar has generators in degrees {degrees}")
    p = free_presentation(m, max_degree)
    found = _classify_generator(p, 0)
    _confirm(p, found.presentation(), max_degree, budget, str(found))
    logger.debug("classified %s as d=%d u=%s", m.name, found.d,
                 format_poly(found.u))
    return found


def enumerate_sigma_n(n: int, rank: int) -> list[SigmaNClass]:
    """Every Σ^d u H*V with d + deg u = n, by increasing deg u."""
    if n < 0 or rank < 1:
        raise ValueError(f"need n >= 0 and rank >= 1, got {n}, {rank}")
    forms = LinearForm.all_forms(rank)
    classes = []
    for k in range(n + 1):
        for combo in combinations_with_replacement(forms, k):
            classes.append(SigmaNClass(n - k, factors_of(combo), rank))
    return classes


def classify_f2_plus_sigma(e: "Presentation | GradedModule",
                           max_degree: int = DEFAULT_MAX_DEGREE,
                           budget: int = DEFAULT_BUDGET) -> SplitClass:
    """E = H*V + Σ^d u H*V, when E is free and E-bar = F2 + Σ^n F2."""
    m = as_module(e, max_degree)
    _require_hfree(m)
    degrees = _quotient_degrees(m)
    if len(degrees) != 2 or degrees[0] != 0:
        raise _refuse("E-bar is not F2 + Σ^n F2", min(degrees, default=0),
                      "E-bar", f"E-bar has generators in degrees {degrees}")
    p = free_presentation(m, max_degree)
    k = 1 if p.generators[0].degree == 0 else 0
    found = SplitClass(_classify_generator(p, k))
    candidate = direct_sum(hv_presentation(p.rank), found.sigma.presentation())
    _confirm(p, candidate, max_degree, budget, str(found))
    return found


def _is_j2(m: GradedModule, max_degree: int, budget: int) -> Verdict:
    bar = quotient_E(m)
    j2 = catalog("j2").presentation
    return is_isomorphic_bounded(bar, j2, max_degree, budget).verdict


def solve_j2(e: "Presentation | GradedModule",
             max_degree: int = DEFAULT_MAX_DEGREE,
             budget: int = DEFAULT_BUDGET) -> J2Class:
    """Tell H (x) J(2) from the exotic submodule of H + ΣH."""
    m = as_module(e, max_degree)
    if m.rank != 1:
        raise ValueError(f"J(2) solutions are classified for rank 1, got "
                         f"{m.rank}")
    _require_hfree(m)
    bar = _is_j2(m, max_degree, budget)
    if not bar.holds:
        raise ClassificationError("E-bar is not J(2)", bar)
    verdicts: dict[J2Class, Verdict] = {}
    tags: tuple[J2Class, ...] = ("tensor", "exotic")
    for tag in tags:
        model = catalog(f"j2-{tag}").presentation
        verdicts[tag] = is_isomorphic_bounded(m, model, max_degree,
                                              budget).verdict
        if verdicts[tag].status == "budget-exceeded":
            raise ClassificationError(
                f"comparison with j2-{tag} ran out of budget",
                verdicts[tag])
    matches = [tag for tag in tags if verdicts[tag].holds]
    if len(matches) != 1:
        raise ClassificationError(
            f"{m.name or 'module'} matches {matches or 'neither model'}",
            verdicts["tensor"])
    return matches[0]


@dataclass(eq=False)
class IsoBucket:
    """Modules found isomorphic to a representative."""
    representative: Presentation
    members: list[Presentation] = field(default_factory=list)
    label: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"class": self.label, "representative":
                self.representative.name, "members": len(self.members)}


def bucket(candidates: Sequence[Presentation],
           max_degree: int = DEFAULT_MAX_DEGREE,
           budget: int = DEFAULT_BUDGET) -> list[IsoBucket]:
    """Group candidates by bounded isomorphism, in first-seen order."""
    buckets: list[IsoBucket] = []
    seen: set[Presentation] = set()
    for p in candidates:
        if p in seen:
            continue
        seen.add(p)
        for b in buckets:
            result = is_isomorphic_bounded(p, b.representative, max_degree,
                                           budget)
            if result.verdict.status == "budget-exceeded":
                raise ClassificationError(
                    f"cannot compare {p.name} with {b.representative.name}",
                    result.verdict)
            if result.verdict.holds:
                b.members.append(p)
                break
        else:
            buckets.append(IsoBucket(p, [p]))
    return buckets


def _poly_choices(rank: int, degree: int,
                  shifts: Sequence[tuple[int, int]]
                  ) -> Iterator[FreeElement]:
    """Every element sum c * t^a g_k of the given degree.

    ``shifts`` lists (generator index, generator degree).
    """
    terms = [(k, mono) for k, d in shifts
             for mono in monomials_of_degree(rank, degree - d)]
    for mask in range(1 << len(terms)):
        yield FreeElement(frozenset(t for b, t in enumerate(terms)
                                    if (mask >> b) & 1))


def sq_tables(rank: int, generators: Sequence[Generator]
              ) -> Iterator[tuple[tuple[int, int, FreeElement], ...]]:
    """Every candidate Sq table on free generators, valid or not."""
    shifts = [(k, g.degree) for k, g in enumerate(generators)]
    slots = [(k, i) for k, g in enumerate(generators)
             for i in range(1, g.degree + 1)]
    options = [list(_poly_choices(rank, generators[k].degree + i, shifts))
               for k, i in slots]
    for choice in product(*options):
        yield tuple((k, i, v) for (k, i), v in zip(slots, choice)
                    if not v.is_zero())


def _valid(p: Presentation, max_degree: int) -> bool:
    return check_axioms(materialize(p, max_degree).module).holds


def search_j2(max_degree: int = 8,
              budget: int = DEFAULT_BUDGET) -> list[IsoBucket]:
    """Brute force over free modules on a (deg 1) and b (deg 2), E-bar J(2)."""
    generators = (Generator("a", 1), Generator("b", 2))
    candidates = []
    tried = 0
    for table in sq_tables(1, generators):
        tried += 1
        p = Presentation(1, generators, table, name=f"j2-search-{tried}")
        if not _valid(p, max_degree):
            continue
        if not _is_j2(materialize(p, max_degree).module, max_degree,
                      budget).holds:
            continue
        candidates.append(p)
    logger.debug("search j2: %d tables, %d valid with E-bar = J(2)", tried,
                 len(candidates))
    buckets = bucket(candidates, max_degree, budget)
    for b in buckets:
        b.label = solve_j2(b.representative, max_degree, budget)
    return buckets


def search_sigma_n(n: int, rank: int = 1,
                   max_degree: int = DEFAULT_MAX_DEGREE,
                   budget: int = DEFAULT_BUDGET) -> list[IsoBucket]:
    """Brute force over one-generator free modules with E-bar = Σ^n F2."""
    generators = (Generator("g", n),)
    candidates = []
    tried = 0
    for table in sq_tables(rank, generators):
        tried += 1
        p = Presentation(rank, generators, table,
                         name=f"sigma-search-{tried}")
        if _valid(p, max_degree):
            candidates.append(p)
    logger.debug("search sigma n=%d rank=%d: %d tables, %d valid", n, rank,
                 tried, len(candidates))
    buckets = bucket(candidates, max_degree, budget)
    for b in buckets:
        b.label = str(classify_sigma_n(b.representative, max_degree, budget))
    return buckets


def check_resolution(e: "Presentation | GradedModule",
                     i0: "Presentation | GradedModule",
                     i1: "Presentation | GradedModule",
                     phi: GradedMap | Mapping[int, F2Matrix] | None = None,
                     max_degree: int = DEFAULT_MAX_DEGREE,
                     expected_bar: Mapping[int, F2Matrix] | None = None,
                     budget: int = DEFAULT_BUDGET) -> Verdict:
    """0 -> E -> I0 -> I1 with I0, I1 of the form H*V (x) injective.

    Checks that phi is linear, that its kernel is isomorphic to E, and,
    when ``expected_bar`` is given, that phi induces it on the quotients
    by the augmentation ideal.  ``phi`` of None is the zero map.
    """
    m0, m1 = as_module(i0, max_degree), as_module(i1, max_degree)
    if isinstance(phi, GradedMap):
        phi = GradedMap(m0, m1, phi.matrices)
    else:
        phi = GradedMap(m0, m1, dict(phi or {}))
    for n in phi.degrees():
        mat = phi.at(n)
        if (mat.nrows, mat.ncols) != (m1.dim(n), m0.dim(n)):
            return Verdict.failing(n, Witness(
                n, "phi", f"matrix shape {mat.nrows}x{mat.ncols}, expected "
                f"{m1.dim(n)}x{m0.dim(n)}"), TRUNCATION_NOTE)
    broken = phi.check_linear()
    if broken is not None:
        return Verdict.failing(broken.degree, broken, TRUNCATION_NOTE)
    spans = {n: kernel_basis(phi.at(n)) for n in m0.degrees()}
    kernel = restrict(m0, spans, name="ker phi", rank=m0.rank).module
    iso = is_isomorphic_bounded(e, kernel, max_degree, budget).verdict
    if not iso.holds:
        return iso
    if expected_bar is not None:
        for n, induced in sorted(induced_bar(phi).items()):
            if not induced.ncols:
                continue
            wanted = expected_bar.get(n, F2Matrix.zero(induced.nrows,
                                                       induced.ncols))
            if induced != wanted:
                return Verdict.failing(n, Witness(
                    n, "phi-bar", f"induced map in degree {n} is "
                    f"{induced.to_lists()}, expected {wanted.to_lists()}"),
                    TRUNCATION_NOTE)
    return Verdict.holding(phi.top, TRUNCATION_NOTE)


def serre_containment(cls: SigmaNClass,
                      max_degree: int = DEFAULT_MAX_DEGREE) -> Verdict:
    """c_V^alpha H*V lies in u H*V, alpha the largest multiplicity."""
    alpha = max((mult for _, mult in cls.factors), default=0)
    c = dickson_top(cls.rank).poly ** alpha
    base = c.degree or 0
    for n in range(base, max_degree + 1):
        for mono in monomials_of_degree(cls.rank, n - base):
            x: PolyElement | None = c * PolyElement.monomial(mono)
            for form, mult in cls.factors:
                for _ in range(mult):
                    if x is not None:
                        x = divide_linear(x, form)
            if x is None:
                element = format_poly(c * PolyElement.monomial(mono))
                return Verdict.failing(n, Witness(
                    n, element, f"not divisible by {format_poly(cls.u)}"),
                    TRUNCATION_NOTE)
    return Verdict.holding(max_degree, TRUNCATION_NOTE)
