import itertools
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from localdom.graph import Graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=10, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    if connected:
        # hang every vertex off a random earlier one
        parents = draw(st.lists(st.integers(0, 10**6), min_size=max(n - 1, 0), max_size=max(n - 1, 0)))
        edges += [(p % (i + 1), i + 1) for i, p in enumerate(parents)]
    return Graph(n, set(tuple(sorted(e)) for e in edges))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(12345)


# ---------------------------------------------------------------------------
# acceptance reporting: one line per criterion in the terminal summary

ACCEPTANCE: dict[str, list] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


@pytest.fixture
def criterion(request):
    """Record ``(id, detail)``; pass/fail is taken from the test outcome."""
    marker = request.node.get_closest_marker("criterion")
    note = {"detail": ""}
    yield note
    rep = getattr(request.node, "rep_call", None)
    ACCEPTANCE[marker.args[0]] = ["PASS" if rep is not None and rep.passed else "FAIL", marker.args[1], note["detail"]]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=int):
        status, title, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{status}] {key}. {title}: {detail}")
