from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    _acceptance.setdefault(report.nodeid, []).append(report)


def pytest_collection_finish(session):
    for item in session.items:
        meta = getattr(getattr(item, "function", None), "acceptance", None)
        if meta:
            _acceptance_items[item.nodeid] = meta


_acceptance_items = {}


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_items:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (number, title, limit) in sorted(_acceptance_items.items(), key=lambda kv: kv[1][0]):
        reports = _acceptance.get(nodeid)
        if not reports:
            status, took = "NOT RUN", ""
        else:
            rep = reports[-1]
            status = "PASS" if rep.passed else "FAIL"
            took = f" in {rep.duration:.2f} s"
        terminalreporter.write_line(f"criterion {number:2d}: {status}{took} (limit {limit} s) - {title}")
