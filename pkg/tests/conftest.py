import os

from hypothesis import settings

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

import pytest

# PASS/FAIL lines from the acceptance suite, repeated in the terminal summary
ACCEPTANCE_LOG: list = []


@pytest.fixture
def acceptance():
    def record(label: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  criterion {label}" + (f"  ({detail})" if detail else "")
        print(line)
        ACCEPTANCE_LOG.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
