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
# hvmod/src/hvmod/types.py

"""Shared result types, defaults and exceptions."""

from dataclasses import dataclass, field
from typing import Any, Final, Literal


DEFAULT_MAX_DEGREE: Final = 16
DEFAULT_SEED: Final = 0
DEFAULT_BUDGET: Final = 200_000
JSON_SCHEMA: Final = 1

TRUNCATION_NOTE: Final = (
    "certified up to the truncation degree only; extension to all "
    "degrees is not checked"
)

VerdictStatus = Literal["holds-up-to-N", "fails", "budget-exceeded"]


@dataclass(frozen=True)
class Witness:
    """An element and the condition it violates."""
    degree: int
    element: str
    condition: str
    vector: int = 0
    data: tuple[tuple[str, int], ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "element": self.element,
            "condition": self.condition,
            "vector": self.vector,
            **dict(self.data),
        }


@dataclass(frozen=True)
class Verdict:
    """Bounded answer of a check: holds up to a degree, or a witness."""
    status: VerdictStatus
    certified_degree: int
    witness: Witness | None = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.status == "fails" and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    @property
    def holds(self) -> bool:
        return self.status == "holds-up-to-N"

    @classmethod
    def holding(cls, degree: int, note: str = "") -> "Verdict":
        return cls("holds-up-to-N", degree, None, note)

    @classmethod
    def failing(cls, degree: int, witness: Witness,
                note: str = "") -> "Verdict":
        return cls("fails", degree, witness, note)

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "certified_degree": self.certified_degree,
            "witness": self.witness.to_dict() if self.witness else None,
            "note": self.note,
        }


@dataclass(frozen=True)
class CheckResult:
    """One named check inside a verification suite."""
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteResult:
    """Result of running an acceptance suite."""
    name: str
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> int:
        return sum(1 for check in self.checks if not check.passed)


class PresentationError(ValueError):
    """Malformed or inconsistent module presentation."""

    def __init__(self, message: str, line: int | None = None,
                 source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None and line is not None:
            where = f"{source}:{line}: "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(f"{where}{message}")


class TruncationError(ValueError):
    """The truncation degree is too low for the requested operation."""


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of budget before deciding."""


class ClassificationError(RuntimeError):
    """A classifier met input contradicting the theorem it implements."""

    def __init__(self, message: str, verdict: Verdict | None = None):
        self.verdict = verdict
        super().__init__(message)
