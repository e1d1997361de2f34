# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/fixtures/__init__.py
"""Presentation builders and .mod files for hvmod tests."""