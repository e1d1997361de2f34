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
# hvmod/src/hvmod/parser.py

"""Module presentation files: one declaration per line.

    name exotic
    rank 1
    generator g1 1
    generator g2 2
    sq 1 g1 = g2
    subgen t*g1 + g2
    relation t^2*g1

``submodule-of <file>`` takes generators and squares from another file
(or a ``catalog:`` reference) instead of declaring them.
"""

import logging
from collections.abc import Sequence
from pathlib import Path

from .hv import parse_monomial
from .types import DEFAULT_MAX_DEGREE, PresentationError
from .umod import (
    GENERATOR_NAME,
    VARIABLE_NAME,
    FreeElement,
    Generator,
    Presentation,
)

logger = logging.getLogger(__name__)

CATALOG_PREFIX = "catalog:"


def parse_element(text: str, rank: int,
                  generators: Sequence[Generator]) -> FreeElement:
    """Parse `t^2*g1 + t*g2`; each summand ends with a generator."""
    names = {g.name: k for k, g in enumerate(generators)}
    text = text.strip()
    if text == "0":
        return FreeElement()
    terms: set[tuple[int, tuple[int, ...]]] = set()
    for summand in text.split("+"):
        factors = [f.strip() for f in summand.split("*")]
        if not factors[-1]:
            raise ValueError(f"empty summand in {text!r}")
        gen = factors[-1]
        if gen not in names:
            raise ValueError(f"unknown generator {gen!r}")
        coeff = "*".join(factors[:-1]) or "1"
        terms ^= {(names[gen], parse_monomial(coeff, rank))}
    return FreeElement(frozenset(terms))


class PresentationParser:
    """Parse presentation text into a validated-shape Presentation."""

    def __init__(self, text: str, source: str | None = None,
                 base: Path | None = None):
        self.text = text
        self.source = source
        self.base = base
        self.rank: int | None = None
        self.name = ""
        self.generators: list[Generator] = []
        self.table: dict[tuple[int, int], tuple[FreeElement, int]] = {}
        self.ambient: Presentation | None = None
        self.subgens: list[FreeElement] = []
        self.relations: list[FreeElement] = []

    def _error(self, message: str, line: int) -> PresentationError:
        return PresentationError(message, line, self.source)

    def _need_rank(self, line: int) -> int:
        if self.rank is None:
            raise self._error("'rank' must come first", line)
        return self.rank

    def _element(self, text: str, line: int) -> FreeElement:
        rank = self._need_rank(line)
        try:
            return parse_element(text, rank, self.generators)
        except ValueError as exc:
            raise self._error(str(exc), line) from exc

    def _degree(self, e: FreeElement, line: int) -> int | None:
        degrees = {self.generators[k].degree + sum(m) for k, m in e.terms}
        if len(degrees) > 1:
            raise self._error(f"inhomogeneous element: degrees "
                              f"{sorted(degrees)}", line)
        return degrees.pop() if degrees else None

    def _declare_rank(self, words: list[str], line: int) -> None:
        if len(words) != 2 or not words[1].isdigit():
            raise self._error("usage: rank <r>", line)
        if self.rank is not None:
            raise self._error("rank declared twice", line)
        self.rank = int(words[1])

    def _declare_generator(self, words: list[str], line: int) -> None:
        self._need_rank(line)
        if self.ambient is not None:
            raise self._error("generators come from the ambient module", line)
        if len(words) != 3 or not words[2].isdigit():
            raise self._error("usage: generator <name> <degree>", line)
        name = words[1]
        if not GENERATOR_NAME.fullmatch(name) or VARIABLE_NAME.fullmatch(name):
            raise self._error(f"bad generator name {name!r}", line)
        if any(g.name == name for g in self.generators):
            raise self._error(f"generator {name} declared twice", line)
        self.generators.append(Generator(name, int(words[2])))

    def _declare_sq(self, rest: str, line: int) -> None:
        if self.ambient is not None:
            raise self._error("squares come from the ambient module", line)
        head, sep, value = rest.partition("=")
        words = head.split()
        if not sep or len(words) != 2 or not words[0].isdigit():
            raise self._error("usage: sq <i> <generator> = <element>", line)
        i, name = int(words[0]), words[1]
        index = next((k for k, g in enumerate(self.generators)
                      if g.name == name), None)
        if index is None:
            raise self._error(f"unknown generator {name!r}", line)
        g = self.generators[index]
        if i < 1:
            raise self._error(f"Sq{i}: need i >= 1", line)
        element = self._element(value, line)
        if i > g.degree and not element.is_zero():
            raise self._error(
                f"Sq{i} {name} must vanish since {i} > {g.degree}", line)
        found = self._degree(element, line)
        if found is not None and found != g.degree + i:
            raise self._error(
                f"Sq{i} {name} has degree {found}, expected "
                f"{g.degree + i}", line)
        if (index, i) in self.table:
            raise self._error(f"Sq{i} {name} given twice", line)
        self.table[(index, i)] = (element, line)

    def _declare_ambient(self, words: list[str], line: int) -> None:
        if len(words) != 2:
            raise self._error("usage: submodule-of <file>", line)
        if self.generators or self.table:
            raise self._error("submodule-of must precede generators", line)
        ref = words[1]
        if not ref.startswith(CATALOG_PREFIX) and self.base is not None:
            ref = str(self.base / ref)
        try:
            ambient = load_presentation(ref)
        except (OSError, KeyError) as exc:
            raise self._error(f"cannot load {words[1]}: {exc}", line) from exc
        if not ambient.is_free:
            raise self._error(f"{words[1]} is not a plain free module", line)
        if self.rank is not None and self.rank != ambient.rank:
            raise self._error(f"rank {self.rank} does not match ambient "
                              f"rank {ambient.rank}", line)
        self.rank = ambient.rank
        self.ambient = ambient
        self.generators = list(ambient.generators)

    def _declare_extra(self, keyword: str, rest: str, line: int) -> None:
        element = self._element(rest, line)
        self._degree(element, line)
        if keyword == "subgen":
            self.subgens.append(element)
        else:
            self.relations.append(element)

    def parse(self) -> Presentation:
        for number, raw in enumerate(self.text.splitlines(), start=1):
            content = raw.split("#", 1)[0].strip()
            if not content:
                continue
            keyword, _, rest = content.partition(" ")
            words = content.split()
            if keyword == "rank":
                self._declare_rank(words, number)
            elif keyword == "name":
                self.name = rest.strip()
            elif keyword == "generator":
                self._declare_generator(words, number)
            elif keyword == "sq":
                self._need_rank(number)
                self._declare_sq(rest, number)
            elif keyword == "submodule-of":
                self._declare_ambient(words, number)
            elif keyword in ("subgen", "relation"):
                self._declare_extra(keyword, rest, number)
            else:
                raise self._error(f"unknown declaration {keyword!r}", number)
        if self.rank is None:
            raise PresentationError("missing 'rank' declaration", None,
                                    self.source)
        if self.ambient is not None:
            table = self.ambient.sq_table
        else:
            table = tuple((k, i, e) for (k, i), (e, _) in
                          sorted(self.table.items()) if not e.is_zero())
        subgens = tuple(self.subgens) if self.subgens else None
        name = self.name or (Path(self.source).stem if self.source else "")
        logger.debug("parsed %s: %d generators, %d squares", name,
                     len(self.generators), len(table))
        return Presentation(self.rank, tuple(self.generators), table,
                            subgens, tuple(self.relations), name)


def parse_presentation(text: str, source: str | None = None) -> Presentation:
    return PresentationParser(text, source).parse()


def load_presentation(ref: str | Path,
                      max_degree: int = DEFAULT_MAX_DEGREE) -> Presentation:
    """Read a presentation file, or build a ``catalog:<name>[:args]`` entry."""
    ref = str(ref)
    if ref.startswith(CATALOG_PREFIX):
        from .catalog import catalog

        name, *args = ref[len(CATALOG_PREFIX):].split(":")
        return catalog(name, *args, max_degree=max_degree).presentation
    path = Path(ref)
    text = path.read_text(encoding="utf-8")
    return PresentationParser(text, str(path), path.parent).parse()


def format_presentation(p: Presentation) -> str:
    """The presentation in the file format read by parse_presentation."""
    lines = []
    if p.name:
        lines.append(f"name {p.name}")
    lines.append(f"rank {p.rank}")
    for g in p.generators:
        lines.append(f"generator {g.name} {g.degree}")
    for k, i, value in sorted(p.sq_table, key=lambda e: (e[0], e[1])):
        lines.append(f"sq {i} {p.generators[k].name} = "
                     f"{p.format_element(value)}")
    for e in p.subgens or ():
        lines.append(f"subgen {p.format_element(e)}")
    for e in p.relations:
        lines.append(f"relation {p.format_element(e)}")
    return "\n".join(lines) + "\n"
