import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("lagsurf", max_examples=60, deadline=None)
settings.load_profile("lagsurf")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# acceptance results: criterion -> list of (label, ok, detail)
ACCEPTANCE = {}


def record(criterion, label, ok, detail=""):
    ACCEPTANCE.setdefault(criterion, []).append((label, bool(ok), detail))
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        items = ACCEPTANCE[crit]
        ok = all(i[1] for i in items)
        parts = "; ".join(f"{label} {'ok' if good else 'FAILED'} ({detail})"
                          for label, good, detail in items)
        tr.write_line(f"criterion {crit:2d}: {'PASS' if ok else 'FAIL'} - {parts}")
