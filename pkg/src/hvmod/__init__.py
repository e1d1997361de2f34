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
# hvmod/src/hvmod/__init__.py

"""Unstable modules over H*V and the mod 2 Steenrod algebra."""

from .catalog import CatalogEntry, catalog, gysin_model
from .classify import (
    J2Class,
    SigmaNClass,
    SplitClass,
    check_resolution,
    classify_f2_plus_sigma,
    classify_sigma_n,
    enumerate_sigma_n,
    search_j2,
    search_sigma_n,
    solve_j2,
)
from .functors import (
    SmithReport,
    TorResult,
    fix_z2,
    quotient_E,
    smith_sequence,
    tensor_with_HV,
    tor1,
)
from .parser import format_presentation, load_presentation, parse_presentation
from .steenrod import adem_normalize, brown_gitler, free_unstable
from .types import (
    BudgetExceeded,
    ClassificationError,
    PresentationError,
    TruncationError,
    Verdict,
    Witness,
)
from .umod import (
    GradedMap,
    Presentation,
    is_hfree,
    is_isomorphic_bounded,
    is_nilclosed,
    is_nilpotent,
    is_reduced,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CatalogEntry",
    "ClassificationError",
    "GradedMap",
    "J2Class",
    "Presentation",
    "PresentationError",
    "SigmaNClass",
    "SmithReport",
    "SplitClass",
    "TorResult",
    "TruncationError",
    "Verdict",
    "Witness",
    "adem_normalize",
    "brown_gitler",
    "catalog",
    "check_resolution",
    "classify_f2_plus_sigma",
    "classify_sigma_n",
    "enumerate_sigma_n",
    "fix_z2",
    "format_presentation",
    "free_unstable",
    "gysin_model",
    "is_hfree",
    "is_isomorphic_bounded",
    "is_nilclosed",
    "is_nilpotent",
    "is_reduced",
    "load_presentation",
    "parse_presentation",
    "quotient_E",
    "search_j2",
    "search_sigma_n",
    "smith_sequence",
    "solve_j2",
    "tensor_with_HV",
    "tor1",
    "validate",
]
