_acceptance = {}


def pytest_addoption(parser):
    parser.addoption("--update-golden", action="store_true",
                     help="rewrite tests/golden from the current CLI output")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_c" in report.nodeid:
        _acceptance[report.nodeid.rsplit("::", 1)[1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for label, check in CRITERIA:
        outcome = _acceptance.get(check.__name__)
        if outcome is not None:
            status = "PASS" if outcome == "passed" else "FAIL"
            terminalreporter.write_line(f"{status}  criterion {label}")
