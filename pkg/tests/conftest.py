import pytest

from filippov.linalg import FieldSpec

Q = FieldSpec.rationals()
GF2 = FieldSpec.gf(2)
GF3 = FieldSpec.gf(3)
GF5 = FieldSpec.gf(5)
GF7 = FieldSpec.gf(7)


@pytest.fixture(params=[Q, GF5], ids=["Q", "GF5"])
def field(request):
    return request.param


# acceptance criteria report: (number, title, passed, detail), filled by test_acceptance
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {num:>2}: {title} ({detail})")
