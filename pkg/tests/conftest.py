import pytest

from wkauto.lang import gallery_anbn, gallery_ww, random_corpus

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def ww():
    return gallery_ww()


@pytest.fixture
def anbn():
    return gallery_anbn()


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(100)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
