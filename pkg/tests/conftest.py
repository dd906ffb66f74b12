import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("lab", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lab")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_matrix(rng, n, scale=1.0):
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


# acceptance summary ----------------------------------------------------------

NOTES = []


def pytest_terminal_summary(terminalreporter):
    rows = {}
    for status, reps in terminalreporter.stats.items():
        for rep in reps:
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            when = getattr(rep, "when", None)
            if when is None or status not in ("passed", "failed", "error") or (when != "call" and status == "passed"):
                continue
            name = nodeid.split("::")[-1][len("test_criterion_"):]
            num, _, desc = name.split("[")[0].partition("_")
            ok = status == "passed"
            prev = rows.get(int(num))
            if prev is None or not ok:
                rows[int(num)] = (ok if prev is None else prev[0] and ok, desc.replace("_", " "))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(rows):
        ok, desc = rows[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {desc}")
    for line in NOTES:
        terminalreporter.write_line(line)
