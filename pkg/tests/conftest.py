import re

_RESULTS = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+?)(\[|$)", report.nodeid)
    if not m or report.when != "call" and not report.failed:
        return
    key = (int(m.group(1)), m.group(2))
    ok = report.passed if report.when == "call" else False
    _RESULTS[key] = _RESULTS.get(key, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), ok in sorted(_RESULTS.items()):
        terminalreporter.write_line(f"criterion {n:2d} {name}: {'PASS' if ok else 'FAIL'}")
