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
# hvmod/src/hvmod/functors.py

"""Functors between H*V-modules and A-modules: quotient, Tor1, Fix, Smith."""

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import combinations

from .f2lin import Echelon, F2Matrix, GradedModule, kernel_basis, make_module
from .f2lin import rank as matrix_rank
from .steenrod import binom2
from .types import (
    DEFAULT_MAX_DEGREE,
    TRUNCATION_NOTE,
    ClassificationError,
    PresentationError,
    Verdict,
    Witness,
)
from .umod import (
    GENERATOR_NAME,
    VARIABLE_NAME,
    FreeElement,
    Generator,
    GradedMap,
    Inclusion,
    Presentation,
    Projection,
    as_module,
    decomposables,
    factor,
    free_presentation,
    is_hfree,
    materialize,
    restrict,
    truncate,
)

logger = logging.getLogger(__name__)


def quotient_projection(e: "Presentation | GradedModule",
                        max_degree: int = DEFAULT_MAX_DEGREE) -> Projection:
    """E -> E / (augmentation ideal) E, the target as a plain A-module."""
    m = as_module(e, max_degree)
    return factor(m, decomposables(m), name=f"{m.name}-bar" if m.name else "",
                  rank=0)


def quotient_E(e: "Presentation | GradedModule",
               max_degree: int = DEFAULT_MAX_DEGREE) -> GradedModule:
    return quotient_projection(e, max_degree).module


def induced_bar(f: GradedMap) -> dict[int, F2Matrix]:
    """The map E-bar -> F-bar induced by an H*V-linear f, degreewise."""
    source = quotient_projection(f.source, f.source.top)
    target = quotient_projection(f.target, f.target.top)
    return {n: target.maps[n] @ f.at(n) @ source.sections[n]
            for n in f.degrees()
            if n in source.sections and n in target.maps}


def suspend(m: GradedModule, d: int = 1, name: str | None = None
            ) -> GradedModule:
    """(S^d M)^n = M^{n-d}; Sq and t commute with the shift."""
    prefix = "Σ" if d == 1 else f"Σ^{d} "
    labels = {n + d: [f"{prefix}{m.label(n, k)}" for k in range(m.dim(n))]
              for n in m.degrees()}
    sq = {(i, n + d): mat for (i, n), mat in m.sq.items()}
    mul = {(j, n + d): mat for (j, n), mat in m.mul.items()}
    if name is None:
        name = f"{prefix}{m.name}" if m.name else ""
    return make_module(labels, m.bottom + d, m.top + d, m.rank, sq, mul, name)


@dataclass(frozen=True, eq=False)
class TorResult:
    """Tor1 dims; for V = Z/2 also the A-module S(ann t)."""
    dims: dict[int, int]
    module: GradedModule | None = None


def _koszul_h1(m: GradedModule, n: int) -> int:
    r = m.rank
    below = m.dim(n - 1)
    if not below:
        return 0
    cols = []
    for j in range(r):
        cols += m.t_map(j, n - 1).columns()
    d1 = F2Matrix.from_columns(cols, m.dim(n))
    boundaries = []
    lower = m.dim(n - 2)
    if lower:
        for j, k in combinations(range(r), 2):
            tj, tk = m.t_map(j, n - 2), m.t_map(k, n - 2)
            for b in range(lower):
                boundaries.append((tj.column(b) << (k * below))
                                  | (tk.column(b) << (j * below)))
    d2_rank = matrix_rank(F2Matrix.from_columns(boundaries, r * below)) \
        if boundaries else 0
    return r * below - matrix_rank(d1) - d2_rank


def tor1(e: "Presentation | GradedModule",
         max_degree: int = DEFAULT_MAX_DEGREE) -> TorResult:
    """Tor1 over H*V with F2, placed so that ann(t) in degree n sits in n+1."""
    m = as_module(e, max_degree)
    if m.rank == 0:
        return TorResult({n: 0 for n in m.degrees()}, None)
    if m.rank == 1:
        below = truncate(m, m.bottom, m.top - 1)
        spans = {n: kernel_basis(m.t_map(0, n)) for n in below.degrees()}
        ann = restrict(below, spans, rank=0).module
        module = suspend(ann, 1, name=f"Tor1({m.name})" if m.name else "")
        return TorResult(module.space.dims, module)
    dims = {n: _koszul_h1(m, n) for n in m.degrees()}
    return TorResult(dims, None)


def _rank0_module(e: "Presentation | GradedModule") -> GradedModule:
    if isinstance(e, GradedModule):
        return e
    if e.rank != 0:
        raise PresentationError(f"{e.name or 'module'} is not an A-module "
                                "presentation (rank 0)")
    top = max((g.degree for g in e.generators), default=0)
    return materialize(e, top).module


def tensor_with_HV(m: "Presentation | GradedModule", rank: int = 1,
                   name: str | None = None) -> Presentation:
    """H*V (x) M, free on the basis of M with the Cartan-extended action.

    M is taken to vanish above its top degree.
    """
    mod = _rank0_module(m)
    generators: list[Generator] = []
    index: dict[tuple[int, int], int] = {}
    taken: set[str] = set()
    for n in mod.degrees():
        for k in range(mod.dim(n)):
            label = mod.label(n, k)
            if (not GENERATOR_NAME.fullmatch(label)
                    or VARIABLE_NAME.fullmatch(label) or label in taken):
                label = f"m{n}_{k}"
            taken.add(label)
            index[(n, k)] = len(generators)
            generators.append(Generator(label, n))
    unit = (0,) * rank
    table = []
    for n in mod.degrees():
        for i in range(1, min(n, mod.top - n) + 1):
            sq = mod.sq_map(i, n)
            for k in range(mod.dim(n)):
                col = sq.column(k)
                if col:
                    terms = frozenset((index[(n + i, h)], unit)
                                      for h in range(mod.dim(n + i))
                                      if (col >> h) & 1)
                    table.append((index[(n, k)], i, FreeElement(terms)))
    if name is None:
        name = f"H (x) {mod.name}" if mod.name else "H (x) M"
    return Presentation(rank, tuple(generators), tuple(table), name=name)


@dataclass(frozen=True, eq=False)
class LocalizedWindow:
    """t^{-1}E on degrees [-radius, radius] for a free presentation E, r = 1.

    Degree n has basis t^{n-|g|} g, one vector per generator g.
    """
    presentation: Presentation
    radius: int
    module: GradedModule

    def embed(self, n: int) -> list[int]:
        """The basis t^a g with a >= 0 of E^n, as window vectors."""
        return [1 << k for k, g in enumerate(self.presentation.generators)
                if g.degree <= n]


def _power_label(a: int, name: str) -> str:
    if a == 0:
        return name
    if a == 1:
        return f"t*{name}"
    return f"t^{a}*{name}"


def localize(p: Presentation, radius: int) -> LocalizedWindow:
    if p.rank != 1 or not p.is_free:
        raise ValueError("localization needs a plain free presentation of "
                         "rank 1")
    gens = p.generators
    size = len(gens)
    sq, mul = {}, {}
    for n in range(-radius, radius + 1):
        if n < radius:
            mul[(0, n)] = F2Matrix.identity(size)
        for i in range(1, radius - n + 1):
            cols = []
            for k, g in enumerate(gens):
                a = n - g.degree
                col = 0
                for j in range(i + 1):
                    if not binom2(a, j):
                        continue
                    for h, (c,) in p.sq_of(k, i - j).terms:
                        col ^= 1 << h
                cols.append(col)
            sq[(i, n)] = F2Matrix.from_columns(cols, size)
    labels = {n: [_power_label(n - g.degree, g.name) for g in gens]
              for n in range(-radius, radius + 1)}
    module = make_module(labels, -radius, radius, 1, sq, mul,
                         name=f"{p.name}[1/t]" if p.name else "")
    return LocalizedWindow(p, radius, module)


def unstable_part(w: GradedModule) -> dict[int, list[int]]:
    """Largest sub-H-A-module of the window satisfying instability.

    One descending sweep: degree n only looks at degrees above n.
    Degrees near the top of the window are too large and get discarded.
    """
    spans: dict[int, list[int]] = {}
    for n in range(w.top, w.bottom - 1, -1):
        dim = w.dim(n)
        blocks: list[F2Matrix] = []
        for i in range(1, w.top - n + 1):
            allowed = Echelon(spans[n + i] if i <= n else ())
            cols = [allowed.reduce(c)[0] for c in w.sq_map(i, n).columns()]
            blocks.append(F2Matrix.from_columns(cols, w.dim(n + i)))
        if n < w.top:
            for j in range(w.rank):
                allowed = Echelon(spans[n + 1])
                cols = [allowed.reduce(c)[0]
                        for c in w.t_map(j, n).columns()]
                blocks.append(F2Matrix.from_columns(cols, w.dim(n + 1)))
        if blocks:
            stacked = reduce(lambda a, b: a.stack(b), blocks)
            spans[n] = kernel_basis(stacked)
        else:
            spans[n] = [1 << k for k in range(dim)]
    return spans


def window_radius(p: Presentation, certified: int) -> int:
    top_gen = max((g.degree for g in p.generators), default=0)
    return 2 * certified + 2 + 2 * top_gen


def _require_fixable(m: GradedModule) -> None:
    if m.rank != 1:
        raise ValueError(f"Fix is only computed for V = Z/2, got rank "
                         f"{m.rank}")
    free = is_hfree(m)
    if not free.holds:
        assert free.witness is not None
        raise PresentationError(
            f"{m.name or 'module'} is not free over H: "
            f"{free.witness.condition}")


@dataclass(frozen=True, eq=False)
class _Localized:
    presentation: Presentation
    window: LocalizedWindow
    hull: Inclusion
    certified: int


def _localized_hull(e: "Presentation | GradedModule", max_degree: int
                    ) -> _Localized:
    m = as_module(e, max_degree)
    _require_fixable(m)
    certified = max_degree // 2
    fp = free_presentation(m, max_degree)
    radius = window_radius(fp, certified)
    window = localize(fp, radius)
    spans = unstable_part(window.module)
    logger.debug("localized window radius %d, unstable dims %s", radius,
                 {n: len(s) for n, s in spans.items() if s and n >= 0})
    return _Localized(fp, window, restrict(window.module, spans, rank=1),
                      certified)


def _fix_projection(hull: GradedModule, name: str) -> Projection:
    return factor(hull, decomposables(hull), name=name, rank=0)


def fix_z2(e: "Presentation | GradedModule",
           max_degree: int = DEFAULT_MAX_DEGREE) -> GradedModule:
    """Fix E = Un(t^{-1}E) / t Un(t^{-1}E) for free E over H = H*(Z/2).

    Certified on degrees <= N/2.
    """
    loc = _localized_hull(e, max_degree)
    hull = truncate(loc.hull.module, 0, loc.certified)
    name = f"Fix({loc.presentation.name})" if loc.presentation.name else ""
    return _fix_projection(hull, name).module


@dataclass(frozen=True, eq=False)
class SmithReport:
    """The sequences 0 -> E -> H (x) Fix E -> C -> 0 and
    0 -> S tauC -> E-bar -> Fix E -> C-bar -> 0, truncated."""
    fix_module: GradedModule
    hull: GradedModule
    cokernel: GradedModule
    trivial_part: GradedModule
    reduced_module: GradedModule
    reduced_cokernel: GradedModule
    four_term_exact: Verdict
    eta_injective: Verdict
    certified_degree: int
    cokernel_map: GradedMap


def _trivial_part(c: GradedModule, top: int) -> dict[int, list[int]]:
    spans = {}
    for n in range(c.bottom, top + 1):
        blocks = [c.t_map(j, n) for j in range(c.rank) if n < c.top]
        blocks += [c.sq_map(i, n) for i in range(1, c.top - n + 1)]
        blocks = [b for b in blocks if b.nrows]
        if blocks:
            spans[n] = kernel_basis(reduce(lambda a, b: a.stack(b), blocks))
        else:
            spans[n] = [1 << k for k in range(c.dim(n))]
    return spans


def _exactness(n: int, sizes: tuple[int, int, int, int],
               delta: F2Matrix, alpha: F2Matrix, beta: F2Matrix
               ) -> Witness | None:
    tau, ebar, fix, cbar = sizes
    rd, ra, rb = matrix_rank(delta), matrix_rank(alpha), matrix_rank(beta)
    checks = [
        (rd == tau, "S tauC -> E-bar is injective"),
        ((alpha @ delta).is_zero() and rd + ra == ebar,
         "image = kernel at E-bar"),
        ((beta @ alpha).is_zero() and ra + rb == fix,
         "image = kernel at Fix E"),
        (rb == cbar, "Fix E -> C-bar is surjective"),
    ]
    for ok, condition in checks:
        if not ok:
            return Witness(n, "", condition)
    return None


def smith_sequence(e: "Presentation | GradedModule",
                   max_degree: int = DEFAULT_MAX_DEGREE) -> SmithReport:
    loc = _localized_hull(e, max_degree)
    top = loc.certified
    hull = truncate(loc.hull.module, 0, top,
                    name=f"H (x) Fix({loc.presentation.name})")
    inner: dict[int, list[int]] = {}
    for n in range(0, top + 1):
        inner[n] = []
        for v in loc.window.embed(n):
            found = loc.hull.coordinates(n, v)
            if found is None:
                witness = Witness(n, loc.window.module.render(n, v),
                                  "eta(x) lies outside Un(t^-1 E)", v)
                raise ClassificationError(
                    "eta is not defined on E", Verdict.failing(
                        n, witness, TRUNCATION_NOTE))
            inner[n].append(found)
    for n, vectors in inner.items():
        if Echelon(vectors).rank != len(vectors):
            witness = Witness(n, "", "eta has a kernel")
            raise ClassificationError("eta is not injective", Verdict.failing(
                n, witness, TRUNCATION_NOTE))
    eta_injective = Verdict.holding(top, TRUNCATION_NOTE)
    source = restrict(hull, inner, name=loc.presentation.name)
    coker = factor(hull, inner, name="C", rank=1)
    ebar = quotient_projection(source.module, top)
    fix = _fix_projection(hull, f"Fix({loc.presentation.name})")
    cbar = quotient_projection(coker.module, top)
    tau_spans = _trivial_part(coker.module, top - 1)
    tau = restrict(truncate(coker.module, 0, top - 1), tau_spans,
                   name="tauC", rank=0)
    four_term = Verdict.holding(top, TRUNCATION_NOTE)
    for n in range(0, top + 1):
        tau_basis = tau.maps[n - 1].columns() if n >= 1 else ()
        delta_cols = []
        for c in tau_basis:
            lifted = coker.sections[n - 1].apply(c)
            raised = hull.t_map(0, n - 1).apply(lifted)
            in_source = source.coordinates(n, raised)
            if in_source is None:
                four_term = Verdict.failing(n, Witness(
                    n, hull.render(n, raised), "t * lift(c) lies in E",
                    raised), TRUNCATION_NOTE)
                break
            delta_cols.append(ebar.maps[n].apply(in_source))
        if not four_term.holds:
            break
        ebar_dim, fix_dim = ebar.module.dim(n), fix.module.dim(n)
        delta = F2Matrix.from_columns(delta_cols, ebar_dim)
        alpha = F2Matrix.from_columns(
            [fix.maps[n].apply(source.maps[n].apply(
                ebar.sections[n].apply(1 << k))) for k in range(ebar_dim)],
            fix_dim)
        beta = F2Matrix.from_columns(
            [cbar.maps[n].apply(coker.maps[n].apply(
                fix.sections[n].apply(1 << k))) for k in range(fix_dim)],
            cbar.module.dim(n))
        sizes = (len(tau_basis), ebar_dim, fix_dim, cbar.module.dim(n))
        witness = _exactness(n, sizes, delta, alpha, beta)
        if witness is not None:
            four_term = Verdict.failing(n, witness, TRUNCATION_NOTE)
            break
    logger.debug("Smith sequence: C dims %s, tauC dims %s",
                 coker.module.space.nonzero_dims(),
                 tau.module.space.nonzero_dims())
    return SmithReport(fix.module, hull, coker.module, tau.module,
                       ebar.module, cbar.module, four_term, eta_injective,
                       top, GradedMap(hull, coker.module, coker.maps))
