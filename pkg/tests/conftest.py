from __future__ import annotations

import random
import sys

import pytest
from hypothesis import settings

from groverzeta.graph import Graph, complete, complete_bipartite, cube, cycle, petersen

# oracle libraries (sympy, networkx) are slow enough to trip per-example deadlines
settings.register_profile("default", deadline=None)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile("default")


def k5_minus_edge() -> Graph:
    g = complete(5)
    return Graph(5, tuple(e for e in g.edges if e != (0, 1)))


FIXTURES = {
    "k4": complete(4),
    "k5": complete(5),
    "k33": complete_bipartite(3, 3),
    "petersen": petersen(),
    "cube": cube(),
    "k5_minus_edge": k5_minus_edge(),
}
DELTA3 = ["k4", "k5", "k33", "petersen", "cube", "k5_minus_edge"]
CUBIC = ["k4", "k33", "petersen", "cube"]


def random_connected_graph(rng: random.Random, n: int, p: float, min_degree: int = 0) -> Graph:
    """Rejection-sample G(n, p) until it is connected with the requested min degree."""
    while True:
        edges = tuple((i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p)
        deg = [0] * n
        adj = [[] for _ in range(n)]
        for x, y in edges:
            deg[x] += 1
            deg[y] += 1
            adj[x].append(y)
            adj[y].append(x)
        if min(deg) < min_degree:
            continue
        seen, stack = {0}, [0]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) == n:
            return Graph(n, edges)


@pytest.fixture
def triangle():
    return cycle(3)


@pytest.fixture(params=list(FIXTURES))
def fixture_graph(request):
    return request.param, FIXTURES[request.param]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
