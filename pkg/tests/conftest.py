import pytest
from hypothesis import HealthCheck, settings

from ratspace import QQ, parse_ratfunc

settings.register_profile(
    "repo", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def R():
    """Shorthand: R("x^2 + 1/(x-1)") or R(text, field)."""
    return lambda text, field=QQ: parse_ratfunc(text, field)


def pytest_configure(config):
    config._acceptance = []


@pytest.fixture
def accept(request):
    """accept(label, ok, detail): log one acceptance line, then assert ok."""
    expected_fail = request.node.get_closest_marker("xfail") is not None

    def record(label, ok, detail=""):
        if ok:
            status = "PASS"
        else:
            status = "XFAIL" if expected_fail else "FAIL"
        request.config._acceptance.append((label, status, detail))
        assert ok, f"criterion {label}: {detail}"

    return record


def _label_key(item):
    label = item[0]
    digits = "".join(ch for ch in label if ch.isdigit())
    return (int(digits) if digits else 0, label)


def pytest_terminal_summary(terminalreporter, config):
    rows = getattr(config, "_acceptance", [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, detail in sorted(rows, key=_label_key):
        terminalreporter.write_line(f"criterion {label:<4} {status:<6} {detail}")
