import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "conflap", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "conflap"))


@pytest.fixture(autouse=True)
def _no_cap_override(monkeypatch):
    monkeypatch.delenv("CONFLAP_TERM_CAP", raising=False)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
