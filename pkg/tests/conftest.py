import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from skewquad import core  # noqa: E402

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record an acceptance criterion outcome; the summary prints one line each."""

    def record(label, ok, detail=""):
        _CRITERIA.append((label, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERIA:
        line = f"{label}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture
def eye():
    return core.Metric.identity()


@pytest.fixture(params=[None, 0, 7, 123])
def metric(request):
    if request.param is None:
        return core.Metric.identity()
    return core.random_compatible_metric(request.param)


PHI_GRID = np.linspace(math.pi / 4, 3 * math.pi / 4, 42)[1:-1]
