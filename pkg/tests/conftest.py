"""Shared test helpers: acceptance criteria get one summary line each."""

_ACCEPTANCE = []


def record_criterion(number: int, description: str, passed: bool) -> None:
    _ACCEPTANCE.append((number, description, passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number, description, passed in sorted(_ACCEPTANCE):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} [{status}] {description}")
