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
# hvmod/src/hvmod/hv.py

"""The polynomial algebra H*V = F2[t1..tr] and its Steenrod action."""

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cache, reduce

from .steenrod import binom2

Monomial = tuple[int, ...]

_POWER = re.compile(r"t(\d*)(?:\^(\d+))?")


@dataclass(frozen=True)
class PolyElement:
    """Homogeneous polynomial in F2[t1..tr], as a set of exponent tuples."""
    rank: int
    terms: frozenset[Monomial]

    def __post_init__(self) -> None:
        degrees = set()
        for mono in self.terms:
            if len(mono) != self.rank:
                raise ValueError(f"monomial {mono} has wrong rank")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            degrees.add(sum(mono))
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous polynomial: degrees {degrees}")

    @classmethod
    def zero(cls, rank: int) -> "PolyElement":
        return cls(rank, frozenset())

    @classmethod
    def one(cls, rank: int) -> "PolyElement":
        return cls(rank, frozenset({(0,) * rank}))

    @classmethod
    def monomial(cls, exponents: Sequence[int]) -> "PolyElement":
        return cls(len(exponents), frozenset({tuple(exponents)}))

    @classmethod
    def variable(cls, rank: int, j: int) -> "PolyElement":
        return cls.monomial(tuple(int(i == j) for i in range(rank)))

    @property
    def degree(self) -> int | None:
        if not self.terms:
            return None
        return sum(next(iter(self.terms)))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, reverse=True)

    def __add__(self, other: "PolyElement") -> "PolyElement":
        return PolyElement(self.rank, self.terms ^ other.terms)

    def __mul__(self, other: "PolyElement") -> "PolyElement":
        out: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                out ^= {tuple(x + y for x, y in zip(a, b))}
        return PolyElement(self.rank, frozenset(out))

    def __pow__(self, k: int) -> "PolyElement":
        result = PolyElement.one(self.rank)
        for _ in range(k):
            result = result * self
        return result

    def __str__(self) -> str:
        return format_poly(self)


@cache
def monomials_of_degree(rank: int, n: int) -> tuple[Monomial, ...]:
    """All exponent tuples of total degree n, lexicographically descending."""
    if n < 0:
        return ()
    if rank == 0:
        return ((),) if n == 0 else ()
    if rank == 1:
        return ((n,),)
    out = []
    for first in range(n, -1, -1):
        for rest in monomials_of_degree(rank - 1, n - first):
            out.append((first,) + rest)
    return tuple(out)


@cache
def _sq_monomial(k: int, mono: Monomial) -> frozenset[Monomial]:
    if not mono:
        return frozenset({()}) if k == 0 else frozenset()
    a, rest = mono[0], mono[1:]
    out: set[Monomial] = set()
    for j in range(min(a, k) + 1):
        if not binom2(a, j):
            continue
        for tail in _sq_monomial(k - j, rest):
            out ^= {(a + j,) + tail}
    return frozenset(out)


def sq_monomial(k: int, mono: Monomial) -> frozenset[Monomial]:
    """Sq^k of a monomial; the Cartan formula with Sq(t) = t + t^2."""
    return _sq_monomial(k, tuple(mono))


def sq_on_poly(k: int, p: PolyElement) -> PolyElement:
    if k < 0:
        raise ValueError("negative Steenrod square")
    out: set[Monomial] = set()
    for mono in p.terms:
        out ^= sq_monomial(k, mono)
    return PolyElement(p.rank, frozenset(out))


@dataclass(frozen=True, order=True)
class LinearForm:
    """Nonzero element of H^1 V, as its coefficient tuple."""
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c not in (0, 1) for c in self.coeffs):
            raise ValueError(f"coefficients {self.coeffs} are not in F2")
        if not any(self.coeffs):
            raise ValueError("a linear form must be nonzero")

    @classmethod
    def from_code(cls, rank: int, code: int) -> "LinearForm":
        return cls(tuple((code >> i) & 1 for i in range(rank)))

    @classmethod
    def all_forms(cls, rank: int) -> tuple["LinearForm", ...]:
        """The 2^r - 1 nonzero forms, t1, t2, t1+t2, t3, ..."""
        return tuple(cls.from_code(rank, c) for c in range(1, 1 << rank))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def code(self) -> int:
        return sum(c << i for i, c in enumerate(self.coeffs))

    def as_poly(self) -> PolyElement:
        terms = frozenset(tuple(int(i == j) for i in range(self.rank))
                          for j, c in enumerate(self.coeffs) if c)
        return PolyElement(self.rank, terms)

    def __str__(self) -> str:
        if self.rank == 1:
            return "t"
        return "+".join(f"t{j + 1}" for j, c in enumerate(self.coeffs) if c)


@dataclass(frozen=True)
class Representation:
    """Sum of line characters; the zero tuple is the trivial character."""
    rank: int
    characters: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for ch in self.characters:
            if len(ch) != self.rank or any(c not in (0, 1) for c in ch):
                raise ValueError(f"bad character {ch} for rank {self.rank}")

    @property
    def dimension(self) -> int:
        return len(self.characters)

    def nontrivial(self) -> list[LinearForm]:
        return [LinearForm(ch) for ch in self.characters if any(ch)]

    @property
    def trivial_count(self) -> int:
        return sum(1 for ch in self.characters if not any(ch))


@dataclass(frozen=True)
class DicksonClass:
    """The top Dickson invariant c_V."""
    rank: int
    poly: PolyElement


def product(polys: Iterable[PolyElement], rank: int) -> PolyElement:
    return reduce(lambda a, b: a * b, polys, PolyElement.one(rank))


def dickson_top(rank: int) -> DicksonClass:
    if rank < 1:
        raise ValueError("rank must be at least 1")
    forms = LinearForm.all_forms(rank)
    return DicksonClass(rank, product((f.as_poly() for f in forms), rank))


def euler_class(rho: Representation) -> PolyElement:
    if rho.trivial_count:
        return PolyElement.zero(rho.rank)
    return product((f.as_poly() for f in rho.nontrivial()), rho.rank)


def divide_linear(p: PolyElement, form: LinearForm) -> PolyElement | None:
    """Exact quotient p / form, or None when form does not divide p."""
    if p.is_zero():
        return p
    lead = max(j for j, c in enumerate(form.coeffs) if c)
    others = [j for j, c in enumerate(form.coeffs) if c and j != lead]
    remainder = set(p.terms)
    quotient: set[Monomial] = set()
    while True:
        hits = [m for m in remainder if m[lead] > 0]
        if not hits:
            break
        mono = max(hits, key=lambda m: (m[lead], m))
        q = mono[:lead] + (mono[lead] - 1,) + mono[lead + 1:]
        quotient ^= {q}
        remainder ^= {mono}
        for j in others:
            remainder ^= {q[:j] + (q[j] + 1,) + q[j + 1:]}
    if remainder:
        return None
    return PolyElement(p.rank, frozenset(quotient))


def factor_linear(p: PolyElement) -> tuple[tuple[LinearForm, int], ...] | None:
    """Write p as a product of linear forms, or None if impossible."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    factors = []
    for form in LinearForm.all_forms(p.rank):
        count = 0
        while p.degree:
            q = divide_linear(p, form)
            if q is None:
                break
            p, count = q, count + 1
        if count:
            factors.append((form, count))
    if p.degree != 0:
        return None
    return tuple(factors)


def one_plus_product(factors: Sequence[tuple[LinearForm, int]],
                     rank: int) -> tuple[PolyElement, ...]:
    """Graded pieces of prod (1 + form)^mult, from degree 0 upward."""
    pieces = [PolyElement.one(rank)]
    for form, mult in factors:
        theta = form.as_poly()
        for _ in range(mult):
            shifted = [PolyElement.zero(rank)] + [p * theta for p in pieces]
            pieces = [a + b for a, b in
                      zip(pieces + [PolyElement.zero(rank)], shifted)]
    return tuple(pieces)


def variable_name(rank: int, j: int) -> str:
    return "t" if rank == 1 else f"t{j + 1}"


def format_monomial(mono: Monomial) -> str:
    if not any(mono):
        return "1"
    rank = len(mono)
    parts = []
    for j, e in enumerate(mono):
        if e == 0:
            continue
        name = variable_name(rank, j)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: PolyElement) -> str:
    if p.is_zero():
        return "0"
    return " + ".join(format_monomial(m) for m in p.sorted_terms())


def parse_monomial(text: str, rank: int) -> Monomial:
    exps = [0] * rank
    text = text.strip()
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        match = _POWER.fullmatch(factor.strip())
        if match is None:
            raise ValueError(f"not a monomial factor: {factor!r}")
        index, power = match.groups()
        if index:
            j = int(index) - 1
        elif rank == 1:
            j = 0
        else:
            raise ValueError(f"write t1..t{rank} for rank {rank}")
        if not 0 <= j < rank:
            raise ValueError(f"variable t{index} out of range for rank {rank}")
        exps[j] += int(power) if power else 1
    return tuple(exps)


def parse_poly(text: str, rank: int) -> PolyElement:
    text = text.strip()
    if text == "0":
        return PolyElement.zero(rank)
    out: set[Monomial] = set()
    for chunk in text.split("+"):
        out ^= {parse_monomial(chunk, rank)}
    return PolyElement(rank, frozenset(out))


def parse_linear_form(text: str, rank: int) -> LinearForm:
    p = parse_poly(text, rank)
    if p.degree != 1:
        raise ValueError(f"{text!r} is not a linear form")
    coeffs = [0] * rank
    for mono in p.terms:
        coeffs[mono.index(1)] = 1
    return LinearForm(tuple(coeffs))
