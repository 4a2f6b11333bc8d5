import pytest
from hypothesis import HealthCheck, settings

from hochjz.linalg import QQ, GF
from hochjz.presets import scenario

settings.register_profile(
    "repo", max_examples=40, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

FIELDS = [QQ, GF(2), GF(3)]


@pytest.fixture(scope="session")
def t2_diag():
    return scenario("t2-diag")


@pytest.fixture(scope="session")
def dual():
    return scenario("dual-numbers")


@pytest.fixture(scope="session")
def k_kxk():
    return scenario("k-kxk")


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k])
