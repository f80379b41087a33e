import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    deadline=None,
    derandomize=True,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("exact")


_CRITERIA = []


@pytest.fixture
def criterion():
    """Record ``(number, description, passed, detail)`` and print a status line."""

    def record(number, description, passed, detail=""):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {description}"
        if detail and not passed:
            line += f" -- {detail}"
        _CRITERIA.append((number, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_CRITERIA):
        terminalreporter.write_line(line)
