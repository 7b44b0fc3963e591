import pytest

from rhodes import corpus
from rhodes.radical import parse_field


@pytest.fixture(scope="session")
def curated():
    return corpus.curated()


@pytest.fixture(scope="session")
def exhaustive():
    return corpus.exhaustive(3)


@pytest.fixture(scope="session")
def full_corpus(curated, exhaustive):
    out = dict(exhaustive)
    out.update(curated)
    return out


@pytest.fixture(scope="session")
def fields():
    return {name: parse_field(name) for name in ("Q", "F2", "F3", "F4", "Fbar2")}


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
