import re

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_results: dict[int, dict] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    entry = _results.setdefault(int(m.group(1)), {"ok": True, "ran": False, "details": []})
    if report.when == "call":
        entry["ran"] = True
        entry["details"] += [v for k, v in report.user_properties if k == "detail"]
    if report.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        entry = _results[num]
        verdict = "PASS" if entry["ok"] and entry["ran"] else "FAIL"
        line = f"criterion {num:>2}: {verdict}"
        if entry["details"]:
            line += "  (" + "; ".join(entry["details"]) + ")"
        terminalreporter.write_line(line)
