import random
import time

import pytest
from hypothesis import HealthCheck, settings

from fockcumulants.digraph_poly import WeightedDigraph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE: dict[str, tuple[str, str, float]] = {}


def random_digraph(rng: random.Random, max_vertices: int = 8, max_weight: int = 1,
                   density: float | None = None) -> WeightedDigraph:
    n = rng.randint(1, max_vertices)
    p = density if density is not None else rng.uniform(0.15, 0.6)
    edges = [(a, b) for a in range(n) for b in range(n) if rng.random() < p]
    weights = [rng.randint(1, max_weight) for _ in range(n)]
    return WeightedDigraph.build(n, edges, weights, one_based=False)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item.user_properties.append(("elapsed", time.perf_counter() - start))


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    elapsed = dict(report.user_properties).get("elapsed", report.duration)
    ACCEPTANCE[name] = ("PASS" if report.passed else "FAIL", report.nodeid, elapsed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split("_")[1][2:])):
        status, _, elapsed = ACCEPTANCE[name]
        terminalreporter.write_line(f"{status} {name} ({elapsed:.1f}s)")
