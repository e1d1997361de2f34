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
# hvmod/src/hvmod/steenrod.py

"""The mod 2 Steenrod algebra: Adem rewriting, F(m) and J(n)."""

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cache, lru_cache

from .f2lin import F2Matrix, GradedModule, make_module

SqMonomial = tuple[int, ...]
FiniteAModule = GradedModule

_TOKEN = re.compile(r"Sq(\d+)")


def binom2(n: int, k: int) -> int:
    """C(n, k) mod 2, using C(n, k) = +-C(k - n - 1, k) for n < 0."""
    if k < 0:
        return 0
    if n < 0:
        n = k - n - 1
    return 1 if (n & k) == k else 0


def is_admissible(m: SqMonomial) -> bool:
    return all(m[j] >= 2 * m[j + 1] for j in range(len(m) - 1))


def degree(m: SqMonomial) -> int:
    return sum(m)


def excess(m: SqMonomial) -> int:
    if not is_admissible(m):
        raise ValueError(f"{format_monomial(m)} is not admissible")
    if not m:
        return 0
    return m[0] - sum(m[1:])


@cache
def adem_terms(a: int, b: int) -> tuple[SqMonomial, ...]:
    """Right-hand side of Sq^a Sq^b for 0 < a < 2b, zeros dropped."""
    terms = []
    for c in range(a // 2 + 1):
        if binom2(b - c - 1, a - 2 * c):
            terms.append((a + b - c, c) if c else (a + b - c,))
    return tuple(terms)


@lru_cache(maxsize=65536)
def _normalize(m: SqMonomial) -> frozenset[SqMonomial]:
    for j in range(len(m) - 1):
        if m[j] < 2 * m[j + 1]:
            break
    else:
        return frozenset({m})
    head, tail = m[:j], m[j + 2:]
    out: set[SqMonomial] = set()
    for term in adem_terms(m[j], m[j + 1]):
        out ^= _normalize(head + term + tail)
    return frozenset(out)


def normalize_monomial(m: Sequence[int]) -> frozenset[SqMonomial]:
    if any(i < 0 for i in m):
        raise ValueError("Steenrod superscripts must be non-negative")
    return _normalize(tuple(i for i in m if i))


@dataclass(frozen=True)
class SteenrodElement:
    """Sum of admissible monomials of one degree (coefficients in F2)."""
    monomials: frozenset[SqMonomial]

    def __post_init__(self) -> None:
        degrees = {sum(m) for m in self.monomials}
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous element: degrees {degrees}")
        for m in self.monomials:
            if not is_admissible(m) or any(i <= 0 for i in m):
                raise ValueError(f"{m} is not an admissible monomial")

    @classmethod
    def zero(cls) -> "SteenrodElement":
        return cls(frozenset())

    @classmethod
    def unit(cls) -> "SteenrodElement":
        return cls(frozenset({()}))

    @property
    def degree(self) -> int | None:
        if not self.monomials:
            return None
        return sum(next(iter(self.monomials)))

    def is_zero(self) -> bool:
        return not self.monomials

    def sorted_monomials(self) -> list[SqMonomial]:
        return sorted(self.monomials)

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        return SteenrodElement(self.monomials ^ other.monomials)

    def __mul__(self, other: "SteenrodElement") -> "SteenrodElement":
        return adem_normalize(a + b for a in self.monomials
                              for b in other.monomials)

    def __str__(self) -> str:
        return format_steenrod(self)


def adem_normalize(expr: Iterable[Sequence[int]]) -> SteenrodElement:
    """Admissible normal form of a formal sum of Sq products."""
    out: set[SqMonomial] = set()
    degrees = set()
    for product in expr:
        degrees.add(sum(product))
        out ^= normalize_monomial(product)
    if len(degrees) > 1:
        raise ValueError(f"inhomogeneous expression: degrees {degrees}")
    return SteenrodElement(frozenset(out))


def format_monomial(m: SqMonomial) -> str:
    if not m:
        return "1"
    return " ".join(f"Sq{i}" for i in m)


def format_steenrod(e: SteenrodElement) -> str:
    if e.is_zero():
        return "0"
    return " + ".join(format_monomial(m) for m in e.sorted_monomials())


def parse_products(text: str) -> list[SqMonomial]:
    """Split `Sq3 Sq1 + Sq4` into its products; `0` is the empty sum."""
    products = []
    for chunk in text.split("+"):
        words = chunk.replace("*", " ").split()
        if not words:
            raise ValueError(f"empty summand in {text!r}")
        if words == ["0"]:
            continue
        if words == ["1"]:
            products.append(())
            continue
        product = []
        for word in words:
            match = _TOKEN.fullmatch(word)
            if match is None:
                raise ValueError(f"unexpected token {word!r} in {text!r}")
            product.append(int(match.group(1)))
        products.append(tuple(product))
    return products


def parse_steenrod(text: str) -> SteenrodElement:
    return adem_normalize(parse_products(text))


@cache
def admissible_monomials(n: int, max_first: int | None = None
                         ) -> tuple[SqMonomial, ...]:
    """Admissible monomials of degree n, lexicographically sorted."""
    if n == 0:
        return ((),)
    limit = n if max_first is None else min(n, max_first)
    out = []
    for first in range(1, limit + 1):
        for rest in admissible_monomials(n - first, first // 2):
            out.append((first,) + rest)
    return tuple(sorted(out))


@dataclass(frozen=True, eq=False)
class UnstableFreeModule:
    """F(m): the free unstable module on one generator of degree m."""
    generator_degree: int
    basis: tuple[tuple[SqMonomial, ...], ...]
    module: GradedModule

    def dims(self) -> dict[int, int]:
        return self.module.space.dims


def _free_basis(m: int, n: int) -> tuple[SqMonomial, ...]:
    if n < m:
        return ()
    return tuple(mono for mono in admissible_monomials(n - m)
                 if excess(mono) <= m)


def _act_free(m: int, word: SqMonomial) -> set[SqMonomial]:
    """Terms of word * iota_m that survive in F(m)."""
    return {mono for mono in normalize_monomial(word) if excess(mono) <= m}


def free_unstable(m: int, top: int) -> UnstableFreeModule:
    if m < 0 or top < m:
        raise ValueError(f"need 0 <= m <= N, got m={m}, N={top}")
    bases = {n: _free_basis(m, n) for n in range(top + 1)}
    index = {n: {mono: k for k, mono in enumerate(b)}
             for n, b in bases.items()}
    sq = {}
    for n in range(m, top + 1):
        for i in range(1, top - n + 1):
            cols = []
            for mono in bases[n]:
                v = 0
                for term in _act_free(m, (i,) + mono):
                    v ^= 1 << index[n + i][term]
                cols.append(v)
            sq[(i, n)] = F2Matrix.from_columns(cols, len(bases[n + i]))
    labels = {n: [format_monomial(mono) for mono in b]
              for n, b in bases.items()}
    module = make_module(labels, 0, top, 0, sq, {}, name=f"F({m})")
    return UnstableFreeModule(
        m, tuple(bases[n] for n in range(top + 1)), module)


def brown_gitler(n: int, top: int) -> FiniteAModule:
    """J(n), with J(n)^m dual to F(m)^n.

    Sq^i: J(n)^m -> J(n)^{m+i} is the transpose of the map
    F(m+i)^n -> F(m)^n sending Sq^J iota_{m+i} to Sq^J Sq^i iota_m.
    """
    if n < 0:
        raise ValueError("Brown-Gitler index must be non-negative")
    bases = {m: _free_basis(m, n) if m <= n else ()
             for m in range(top + 1)}
    index = {m: {mono: k for k, mono in enumerate(b)}
             for m, b in bases.items()}
    sq = {}
    for m in range(top + 1):
        for i in range(1, top - m + 1):
            source, target = bases[m], bases[m + i]
            if not source or not target:
                continue
            rows = []
            for word in target:
                row = 0
                for term in _act_free(m, word + (i,)):
                    row ^= 1 << index[m][term]
                rows.append(row)
            sq[(i, m)] = F2Matrix(len(target), len(source), tuple(rows))
    labels = {m: [f"{format_monomial(mono)}*" for mono in b]
              for m, b in bases.items()}
    return make_module(labels, 0, top, 0, sq, {}, name=f"J({n})")
