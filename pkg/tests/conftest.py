import sys

import pytest

from floorlog.alpha import parse_alpha

# the exact alpha test set; "log(3)" and "1/2+log(5/3)" are read in base k
ALPHA_TEXTS = ["0", "1", "-1/2", "1/2", "1/3", "log(3)", "1/2+log(5/3)"]
KS = [2, 3, 5, 10]


def alpha_set():
    return [parse_alpha(t) for t in ALPHA_TEXTS]


@pytest.fixture(params=ALPHA_TEXTS)
def alpha(request):
    return parse_alpha(request.param)


@pytest.fixture(params=KS)
def k(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
