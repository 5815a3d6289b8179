from __future__ import annotations

import functools
import sys

import pytest

from shc.linalg import Field
from shc.triple import builtin


@functools.lru_cache(maxsize=None)
def cached_builtin(name: str, prime: int | None = None):
    """One shared instance per (triple, field) so derived matrices are memoized across tests."""
    return builtin(name, Field.Fp(prime) if prime else Field.Q())


@pytest.fixture(scope="session")
def T():
    return cached_builtin


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
