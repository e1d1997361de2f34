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
# hvmod/src/hvmod/catalog.py

"""Named example modules, built as presentations."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field, replace

from .hv import (
    LinearForm,
    Monomial,
    Representation,
    format_poly,
    one_plus_product,
    parse_linear_form,
    product,
)
from .steenrod import binom2
from .types import DEFAULT_MAX_DEGREE
from .umod import FreeElement, Generator, Presentation, direct_sum

logger = logging.getLogger(__name__)

Factors = tuple[tuple[LinearForm, int], ...]


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    presentation: Presentation
    provenance: str
    expected_dims: dict[int, int] | None = None
    args: tuple[str, ...] = field(default_factory=tuple)

    @property
    def finite(self) -> bool:
        return self.expected_dims is not None


def _el(*terms: tuple[int, Monomial]) -> FreeElement:
    return FreeElement(frozenset(terms))


def hv_presentation(rank: int = 1) -> Presentation:
    return Presentation(rank, (Generator("e", 0),), name="H" if rank == 1
                        else f"H*V (rank {rank})")


def sigma_u_presentation(d: int, factors: Factors, rank: int,
                         name: str | None = None) -> Presentation:
    """S^d u H*V with u the product of the given forms, as a free module.

    Sq(S^d u) = S^d u prod (1 + form)^mult, so the generator's squares are
    the graded pieces of that product.
    """
    degree = d + sum(mult for _, mult in factors)
    pieces = one_plus_product(factors, rank)
    table = []
    for i in range(1, degree + 1):
        if i < len(pieces) and not pieces[i].is_zero():
            table.append((0, i, FreeElement(frozenset(
                (0, mono) for mono in pieces[i].terms))))
    if name is None:
        u = format_poly(product((f.as_poly() ** m for f, m in factors), rank))
        shift = "" if d == 0 else ("Σ" if d == 1 else f"Σ^{d} ")
        name = f"{shift}{'' if u == '1' else u}H"
    return Presentation(rank, (Generator("g", degree),), tuple(table),
                        name=name)


def factors_of(forms: Sequence[LinearForm]) -> Factors:
    counts: dict[LinearForm, int] = {}
    for form in forms:
        counts[form] = counts.get(form, 0) + 1
    return tuple(sorted(counts.items(), key=lambda fm: fm[0].code))


def gysin_model(rho: Representation) -> CatalogEntry:
    """Equivariant cohomology of the disc/sphere pair of a representation.

    With every character nontrivial this is e(rho) H*V; otherwise rho
    splits as sigma + tau with tau trivial and the sphere gives
    H*V + S^{dim tau} e(sigma) H*V.
    """
    sigma = factors_of(rho.nontrivial())
    label = ",".join(str(LinearForm(ch)) if any(ch) else "0"
                     for ch in rho.characters)
    if rho.trivial_count == 0:
        p = sigma_u_presentation(0, sigma, rho.rank)
        note = "equivariant cohomology of (D(rho), S(rho))"
    else:
        p = direct_sum(hv_presentation(rho.rank),
                       sigma_u_presentation(rho.trivial_count, sigma,
                                            rho.rank))
        note = "equivariant cohomology of the sphere S(rho)"
    return CatalogEntry(f"gysin {label}", p, note, args=(label,))


def parse_representation(text: str, rank: int | None = None
                         ) -> Representation:
    """`t,0` or `t1,t1+t2`: comma separated characters, `0` trivial."""
    tokens = [tok.strip() for tok in text.split(",") if tok.strip()]
    if not tokens:
        raise ValueError("a representation needs at least one character")
    if rank is None:
        indices = [int(c) for tok in tokens
                   for c in tok.replace("t", " ").replace("+", " ").split()
                   if tok != "0"]
        rank = max(indices, default=1)
    chars = []
    for tok in tokens:
        if tok == "0":
            chars.append((0,) * rank)
        else:
            chars.append(parse_linear_form(tok, rank).coeffs)
    return Representation(rank, tuple(chars))


def rp2_relative(i: int, j: int) -> Presentation:
    """The ideal (y) in F2[t, y]/(y^i (y + t)^j), i + j = 3.

    (0, 3) is the same ring after y -> y + t and is reported as (3, 0).
    The ideal is free over H on y and y^2.
    """
    if i + j != 3 or i < 0 or j < 0:
        raise ValueError(f"need i + j = 3 with i, j >= 0, got ({i}, {j})")
    if i == 0:
        i, j = 3, 0
    # y^3 = sum_m c_m t^m y^(3-m), from expanding (y + t)^j
    c = {m: binom2(j, m) for m in range(1, 4)}

    def power(k: int) -> tuple[int, int, int]:
        e = (1, 0, 0)
        for _ in range(k):
            e0, e1, e2 = 0, e[0], e[1]
            top = e[2]
            e = (e0 ^ (top & c[3]), e1 ^ (top & c[2]), e2 ^ (top & c[1]))
        return e

    e4 = power(4)
    sq2 = _el(*(((0, (3,)),) if e4[1] else ()),
              *(((1, (2,)),) if e4[2] else ()))
    table = [(0, 1, _el((1, (0,))))]
    if not sq2.is_zero():
        table.append((1, 2, sq2))
    return Presentation(1, (Generator("y", 1), Generator("y2", 2)),
                        tuple(table), name=f"rp2({i},{j})")


def poly_c2(max_degree: int, rank: int = 0,
            c1_image: bool = False) -> Presentation:
    """Truncated F2[c2], |c2| = 4, tensored with H*V when rank > 0.

    Generator z{k} stands for c2^k.

    With ``c1_image`` the H-module structure is H (x) over F2[c1] of
    F2[c1, c2] with c1 -> t^2: Sq(c2) = c2 (1 + t^2 + c2).
    """
    count = max_degree // 4 + 1
    gens = tuple(Generator(f"z{k}", 4 * k) for k in range(count))
    table = []
    for k in range(count):
        by_square: dict[int, set[tuple[int, Monomial]]] = {}
        for b in range(k + 1):
            if k + b >= count:
                break
            for a in range(k - b + 1) if c1_image else (0,):
                if not (binom2(k, a + b) and binom2(a + b, a)):
                    continue
                i = 2 * a + 4 * b
                if i == 0:
                    continue
                mono = (2 * a,) + (0,) * (rank - 1) if rank else ()
                by_square.setdefault(i, set()).add((k + b, mono))
        for i, terms in sorted(by_square.items()):
            table.append((k, i, FreeElement(frozenset(terms))))
    if rank == 0:
        name = "F2[c2]"
    else:
        name = "bsu2-b" if c1_image else "bsu2-a"
    return Presentation(rank, gens, tuple(table), name=name)


def _jv1(name: str) -> Presentation:
    return Presentation(1, (Generator("iota", 0),),
                        relations=(_el((0, (2,))),), name=name)


def _j2(rank: int, name: str) -> Presentation:
    unit = (0,) * rank
    return Presentation(rank, (Generator("a", 1), Generator("b", 2)),
                        ((0, 1, _el((1, unit))),), name=name)


def _j2_exotic() -> Presentation:
    return Presentation(
        1, (Generator("e", 0), Generator("s", 1)),
        subgens=(_el((0, (1,)), (1, (0,))), _el((0, (2,)))),
        name="j2-exotic")


Builder = Callable[[tuple[str, ...], int], CatalogEntry]


def _entry(name: str, p: Presentation, note: str,
           dims: dict[int, int] | None = None) -> CatalogEntry:
    return CatalogEntry(name, p, note, dims)


def _int_args(name: str, args: tuple[str, ...], count: int) -> list[int]:
    if len(args) != count:
        raise KeyError(f"{name} takes {count} argument(s), got {len(args)}")
    try:
        return [int(a) for a in args]
    except ValueError as exc:
        raise KeyError(f"{name}: arguments must be integers") from exc


def _build_hv(args: tuple[str, ...], n: int) -> CatalogEntry:
    rank = _int_args("hv", args, 1)[0] if args else 1
    return _entry("hv", hv_presentation(rank), "H*V = F2[t1..tr]")


def _build_rp2(args: tuple[str, ...], n: int) -> CatalogEntry:
    i, j = _int_args("rp2", args, 2)
    try:
        p = rp2_relative(i, j)
    except ValueError as exc:
        raise KeyError(str(exc)) from exc
    return CatalogEntry(
        "rp2", p, "Borel cohomology of RP^2 relative to the fixed branch "
        "y = 0, as the ideal (y) of F2[t, y]/(y^i (y + t)^j)",
        args=tuple(args))


def _build_gysin(args: tuple[str, ...], n: int) -> CatalogEntry:
    if len(args) != 1:
        raise KeyError("gysin takes one argument: the characters")
    try:
        return gysin_model(parse_representation(args[0]))
    except ValueError as exc:
        raise KeyError(str(exc)) from exc


_BUILDERS: dict[str, tuple[str, Builder]] = {
    "hv": ("H*V itself; optional argument: rank", _build_hv),
    "sigma-h": ("ΣH, the suspension of H", lambda a, n: _entry(
        "sigma-h", Presentation(1, (Generator("s", 1),), name="ΣH"),
        "suspension solution with E-bar = ΣF2")),
    "tH": ("tH, free on a degree-1 generator with Sq1 g = t g",
           lambda a, n: _entry("tH", sigma_u_presentation(
               0, ((LinearForm((1,)), 1),), 1, name="tH"),
               "the other suspension solution with E-bar = ΣF2")),
    "h-geq-1": ("H^{>=1}, the augmentation ideal of H", lambda a, n: _entry(
        "h-geq-1", Presentation(1, (Generator("e", 0),),
                                subgens=(_el((0, (1,))),), name="h-geq-1"),
        "reduced, with nilpotent quotient ΣF2")),
    "jv1": ("J_V(1): F2 + ΣF2 with t iota = Σiota", lambda a, n: _entry(
        "jv1", _jv1("jv1"), "not reduced and not H-free, quotient F2",
        {0: 1, 1: 1})),
    "h-leq-1": ("H^{<=1} = H / t^2 H", lambda a, n: _entry(
        "h-leq-1", _jv1("h-leq-1"), "cokernel in the exotic Smith sequence",
        {0: 1, 1: 1})),
    "f2": ("F2 with trivial H-action", lambda a, n: _entry(
        "f2", Presentation(1, (Generator("e", 0),),
                           relations=(_el((0, (1,))),), name="f2"),
        "trivial module, Tor1 = ΣF2", {0: 1})),
    "sigma-t-h": ("ΣtH", lambda a, n: _entry(
        "sigma-t-h", sigma_u_presentation(1, ((LinearForm((1,)), 1),), 1),
        "Fix is ΣF2")),
    "h-plus-sigma-h": ("H + ΣH", lambda a, n: _entry(
        "h-plus-sigma-h", direct_sum(
            hv_presentation(1), Presentation(1, (Generator("s", 1),),
                                             name="ΣH"), name="H + ΣH"),
        "split solution with E-bar = F2 + ΣF2")),
    "j2": ("J(2) as an A-module (rank 0)", lambda a, n: _entry(
        "j2", _j2(0, "J(2)"), "Brown-Gitler module J(2)", {1: 1, 2: 1})),
    "j2-tensor": ("H (x) J(2)", lambda a, n: _entry(
        "j2-tensor", _j2(1, "j2-tensor"), "tensor solution with E-bar = "
        "J(2)")),
    "j2-exotic": ("submodule of H + ΣH generated by (t, Σ1), (t^2, 0)",
                  lambda a, n: _entry(
                      "j2-exotic", _j2_exotic(),
                      "exotic solution with E-bar = J(2)")),
    "rp2": ("relative RP^2 model; arguments: i j with i + j = 3",
            _build_rp2),
    "f2-poly-c2": ("truncated F2[c2] as an A-module", lambda a, n: _entry(
        "f2-poly-c2", poly_c2(n), "cohomology of BSU(2), truncated",
        {4 * k: 1 for k in range(n // 4 + 1)})),
    "bsu2-a": ("H (x) F2[c2], truncated", lambda a, n: _entry(
        "bsu2-a", poly_c2(n, 1), "H (x) H*BSU(2)")),
    "bsu2-b": ("H (x) over F2[c1] of F2[c1, c2], c1 -> t^2",
               lambda a, n: _entry(
                   "bsu2-b", poly_c2(n, 1, c1_image=True),
                   "H (x) over H*BU(1) of H*BU(2)")),
    "gysin": ("Gysin model of a representation; argument: characters "
              "such as t,0 or t1,t2", _build_gysin),
}

CATALOG_NAMES: tuple[str, ...] = tuple(_BUILDERS)


_TAKES_ARGS = frozenset({"hv", "rp2", "gysin"})


def describe(name: str) -> str:
    return _BUILDERS[name][0]


def catalog(name: str, *args: str,
            max_degree: int = DEFAULT_MAX_DEGREE) -> CatalogEntry:
    """Look up a named module; raises KeyError for unknown names."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {name!r}; known: "
                       f"{', '.join(CATALOG_NAMES)}")
    if args and name not in _TAKES_ARGS:
        raise KeyError(f"{name} takes no arguments")
    entry = _BUILDERS[name][1](tuple(args), max_degree)
    if args and not entry.args:
        entry = replace(entry, args=tuple(args))
    logger.debug("catalog %s%s -> %s", name,
                 f" {' '.join(args)}" if args else "", entry.presentation.name)
    return entry
