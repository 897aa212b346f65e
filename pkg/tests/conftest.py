from collections import defaultdict

import hypothesis
import pytest

hypothesis.settings.register_profile("default", deadline=None, max_examples=40)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=400)
hypothesis.settings.load_profile("default")

_outcomes = defaultdict(list)
_names = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(number, name): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, name = mark.args
            _names[number] = name
            item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    number = dict(report.user_properties).get("criterion")
    if number is None:
        return
    if report.when == "call" or report.outcome != "passed":
        if hasattr(report, "wasxfail"):
            outcome = "xfail"
        else:
            outcome = report.outcome
        _outcomes[number].append((report.nodeid, outcome))


def pytest_terminal_summary(terminalreporter):
    if not _names:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_names):
        results = _outcomes.get(number, [])
        passed = sum(1 for _, o in results if o == "passed")
        xfailed = [nid for nid, o in results if o == "xfail"]
        ok = bool(results) and passed == len(results)
        line = f"criterion {number:2d} {_names[number]}: {'PASS' if ok else 'FAIL'}"
        line += f" ({passed}/{len(results)} tests passed)"
        if xfailed:
            line += "; expected failure recorded in the decisions ledger: " + ", ".join(
                nid.split("::")[-1] for nid in xfailed)
        tr.write_line(line)


@pytest.fixture(scope="session")
def sl2_pair():
    from manintriples import build_algebra, make_form
    g = build_algebra([("A", 1), ("A", 1)])
    return g, make_form(g, "complex", [1, -1])


@pytest.fixture(scope="session")
def sl3_pair():
    from manintriples import build_algebra, make_form
    g = build_algebra([("A", 2), ("A", 2)])
    return g, make_form(g, "complex", [1, -1])
