# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/conftest.py
"""Pytest configuration for hvmod tests."""

import pytest


def pytest_addoption(parser):
    """Add custom command-line options."""
    parser.addoption(
        "--quick",
        action="store_true",
        default=False,
        help="Skip brute-force searches and full acceptance suites",
    )


def pytest_configure(config):
    """Configure custom pytest markers."""
    config.addinivalue_line(
        "markers",
        "exhaustive: brute-force search or full acceptance suite (slow)",
    )


def pytest_collection_modifyitems(config, items):
    """Skip exhaustive tests when --quick is passed."""
    if not config.getoption("--quick"):
        return
    skip_exhaustive = pytest.mark.skip(reason="skipped by --quick")
    for item in items:
        if "exhaustive" in item.keywords:
            item.add_marker(skip_exhaustive)
