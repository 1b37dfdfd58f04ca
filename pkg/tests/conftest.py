import importlib

import pytest

from deltaraag import _pycore


def _kernel_modules():
    mods = [pytest.param(_pycore, id="python")]
    try:
        mods.append(pytest.param(importlib.import_module("deltaraag._core"), id="cython"))
    except ImportError:
        mods.append(pytest.param(None, id="cython", marks=pytest.mark.skip(reason="extension not built")))
    return mods


@pytest.fixture(params=_kernel_modules())
def kernels(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
