import pytest

from madelung_flow import PhysParams, solve_density

ACCEPTANCE_LINES: list[str] = []


def record(line: str) -> None:
    """Keep an acceptance verdict line for the end-of-run summary."""
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":").rstrip("ab"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def unit_params():
    return PhysParams()


@pytest.fixture(scope="session")
def linear_table():
    return solve_density(0.0, 1.0, 0.0, (0.0, 25.0), 1e-10)


@pytest.fixture(scope="session")
def linear_table_two_sided():
    return solve_density(0.0, 1.0, 0.0, (0.0, 21.0), 1e-10, two_sided=True)
