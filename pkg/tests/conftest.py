import pytest

from rabcone.fields import GF, QQ, use_field

PRIMES = (10007, 65537, 1000003)


@pytest.fixture(params=["q", "fp:10007"])
def any_field(request):
    fld = QQ if request.param == "q" else GF(10007)
    with use_field(fld):
        yield fld


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
