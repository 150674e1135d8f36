#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Environment-driven limits for the brute-force searches and exact fallbacks.

Values are read on every call so tests and the CLI can override them with
environment variables without re-importing anything.
"""

import os

from errors import InstanceError

ORACLE_LIMIT_ENV = "PEBBLE_ORACLE_LIMIT"
IND_ORACLE_LIMIT_ENV = "PEBBLE_IND_ORACLE_LIMIT"
MWC_LIMIT_ENV = "PEBBLE_MWC_LIMIT"
MIS_LIMIT_ENV = "PEBBLE_MIS_LIMIT"

DEFAULT_LIMITS = {
    ORACLE_LIMIT_ENV: 10**7,
    IND_ORACLE_LIMIT_ENV: 10**6,
    MWC_LIMIT_ENV: 40,
    MIS_LIMIT_ENV: 25,
}

BENCH_OUTPUT_DIR = "bench_results"


def env_limit(name):
    """Current value of a guard, falling back to its default."""
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return DEFAULT_LIMITS[name]
    try:
        value = int(raw)
    except ValueError:
        raise InstanceError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise InstanceError(f"{name} must be non-negative, got {value}")
    return value
