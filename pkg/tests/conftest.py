import pytest

from landair.config import RobotSpec

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def robot_spec():
    return RobotSpec.load()


@pytest.fixture(scope="session")
def endurance_config(robot_spec):
    return robot_spec.endurance_config()


@pytest.fixture(scope="session")
def dynamics_params(robot_spec):
    return robot_spec.dynamics_params()


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for the acceptance summary."""
    def record(label: str, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
        assert ok, f"{label}: {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
