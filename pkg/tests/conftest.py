import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_VERDICTS: list[tuple[str, str, str]] = []


class Verdicts:
    """Collects one pass/fail line per acceptance criterion."""

    def record(self, label: str, passed: bool, detail: str = "") -> None:
        status = "PASS" if passed else "FAIL"
        _VERDICTS.append((status, label, detail))
        print(f"[{status}] {label}: {detail}")


@pytest.fixture(scope="session")
def verdicts() -> Verdicts:
    return Verdicts()


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for status, label, detail in _VERDICTS:
        terminalreporter.write_line(f"[{status}] {label}: {detail}")
    passed = sum(1 for s, _, _ in _VERDICTS if s == "PASS")
    terminalreporter.write_line(f"{passed}/{len(_VERDICTS)} criteria pass")
