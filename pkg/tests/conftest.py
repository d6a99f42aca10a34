import sys
import pytest
from hypothesis import settings

from pcalab import machine

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

BACKENDS = [machine.PyMachine] + ([machine.Machine] if machine.BACKEND == "cython" else [])


@pytest.fixture(params=BACKENDS, ids=lambda c: c.__module__.rsplit(".", 1)[-1])
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
