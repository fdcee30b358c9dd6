import functools
import sys

import pytest

from jsum import kernels
from jsum.fieldtab import build_field


@functools.lru_cache(maxsize=None)
def _field(p, r):
    return build_field(p, r)


@pytest.fixture(scope="session")
def field():
    """Factory for memoized fields: ``field(p, r=1)``."""
    return lambda p, r=1: _field(p, r)


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
