# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/fixtures/modules.py
"""Presentation builders and paths to the .mod files used by the tests."""

from pathlib import Path

from hvmod.catalog import catalog
from hvmod.f2lin import F2Matrix, GradedModule, make_module
from hvmod.umod import FreeElement, Generator, Presentation

DATA = Path(__file__).parent / "data"


def mod_file(name: str) -> Path:
    """Path of tests/fixtures/data/<name>.mod."""
    path = DATA / f"{name}.mod"
    assert path.exists(), f"missing fixture {path}"
    return path


def element(*terms: tuple[int, tuple[int, ...]]) -> FreeElement:
    return FreeElement(frozenset(terms))


def entry(name: str, *args: str) -> Presentation:
    return catalog(name, *args).presentation


def bad_adem() -> Presentation:
    """Degree-2 generator with Sq1 g = t g and Sq2 g = t^2 g."""
    return Presentation(1, (Generator("g", 2),),
                        ((0, 1, element((0, (1,)))),
                         (0, 2, element((0, (2,))))),
                        name="bad-adem")


def sigma_t_h() -> Presentation:
    """Degree-2 generator with Sq1 g = t g and Sq2 g = 0."""
    return Presentation(1, (Generator("g", 2),),
                        ((0, 1, element((0, (1,)))),), name="sigma-t-h")


def unstable_violation() -> GradedModule:
    """Two classes x, y in degrees 0 and 1 with Sq1 x = y."""
    return make_module({0: ["x"], 1: ["y"]}, 0, 1, 0,
                       {(1, 0): F2Matrix.from_lists([[1]])}, {}, "bad")
