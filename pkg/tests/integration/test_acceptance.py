# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/integration/test_acceptance.py
"""Every acceptance suite, at its default truncation.

These run the brute-force searches and the localized Fix computations;
skip them with --quick.
"""

import pytest

from hvmod.validator import SUITES, run_suite


def failures(name, **kwargs):
    (result,) = run_suite(name, **kwargs)
    return [f"{c.name}: {c.detail}" for c in result.checks if not c.passed]


@pytest.mark.exhaustive
@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes(name):
    assert failures(name) == []


@pytest.mark.exhaustive
def test_rp2_at_a_single_truncation():
    assert failures("rp2", max_degree=10) == []
