import pytest

CRITERIA = {
    1: "Fermi-Dirac reproduction",
    2: "entropy curve",
    3: "vacuum construction equivalence",
    4: "annihilation identities",
    5: "statistical equivalence",
    6: "reduced-state identity",
    7: "entropy identities",
    8: "no-cloning scans",
    9: "rotation-matrix check",
    10: "parser/rewriter suite",
    11: "determinism",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for n in getattr(report, "criteria", ()):
        _outcomes.setdefault(n, []).append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criteria = [m.args[0] for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, name in CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        tr.write_line(f"criterion {n:2d} {status:7s} {name}")
