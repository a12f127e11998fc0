import pytest
from gmpy2 import mpq
from hypothesis import HealthCheck, settings

from cmherm.core import MultiPoly

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("CMHERM_CACHE", str(tmp_path / "cache"))


def poly(n, terms):
    return MultiPoly(n, {tuple(e): mpq(c) for e, c in terms.items()})


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
