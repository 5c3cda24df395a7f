import pytest

from exactforms.fixtures import load_fixture

ALL_FIXTURES = ("euclid2", "euclid3", "euclid4", "mink4", "conf3")

# criterion number -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def frames():
    return {name: load_fixture(name) for name in ALL_FIXTURES}


@pytest.fixture
def e2():
    return load_fixture("euclid2")


@pytest.fixture
def e3():
    return load_fixture("euclid3")


@pytest.fixture
def m4():
    return load_fixture("mink4")


@pytest.fixture
def c3():
    return load_fixture("conf3")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[num]
        line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
