import pytest

from wsprimary.corpus import InstanceCorpus

ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def corpus():
    return InstanceCorpus()


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {note}")
