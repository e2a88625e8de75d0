import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from apollo import domain, packing  # noqa: E402


@functools.cache
def enumeration(rho: int, kmax: int):
    return packing.enumerate_packing(rho, kmax)


@functools.cache
def domain_case(rho: int):
    return domain.run_case(rho)


@functools.cache
def group(rho: int):
    return packing.build_group(rho)


@pytest.fixture
def enum():
    return enumeration


@pytest.fixture
def case():
    return domain_case


@pytest.fixture
def gens():
    return group


# -- per-criterion summary for the acceptance suite -------------------------------

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "passed": True, "tests": 0})
    if rep.when == "call":
        entry["tests"] += 1
    if rep.failed:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        verdict = "PASS" if e["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {verdict}  {e['title']} ({e['tests']} tests)")
