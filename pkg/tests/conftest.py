from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

#: Filled by the acceptance tests: criterion number -> (passed, summary line).
ACCEPTANCE_LINES = {}


def record_criterion(number, passed, detail):
    ACCEPTANCE_LINES[number] = (bool(passed), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES, key=lambda k: (int(str(k).split(".")[0]), str(k))):
        passed, detail = ACCEPTANCE_LINES[number]
        terminalreporter.write_line(f"criterion {number:>4}: {'PASS' if passed else 'FAIL'}  {detail}")
