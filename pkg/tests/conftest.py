import os
import time

import pytest
from hypothesis import HealthCheck, settings

from toader_bounds import _pykernels

settings.register_profile(
    "default", max_examples=150, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FULL_SUITE_LIMIT_S = 180.0
_session = {}


def _backends():
    out = [_pykernels]
    try:
        from toader_bounds import _ckernels
        out.append(_ckernels)
    except ImportError:
        pass
    return out


@pytest.fixture(params=_backends(), ids=lambda m: m.BACKEND)
def backend(request):
    return request.param


def pytest_sessionstart(session):
    _session["t0"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    t0 = _session.get("t0")
    if t0 is None or config.getoption("collectonly"):
        return
    wall = time.perf_counter() - t0
    ok = wall < FULL_SUITE_LIMIT_S
    terminalreporter.write_line(
        f"[acceptance 10b] {'PASS' if ok else 'FAIL'} full test suite wall-clock "
        f"{wall:.1f} s (limit {FULL_SUITE_LIMIT_S:.0f} s)")
