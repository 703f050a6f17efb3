from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import pytest
from networkx.generators.atlas import graph_atlas_g

from linkadmit.core import ConflictGraph

CRITERIA: dict[int, tuple[str, bool]] = {}


def from_nx(h) -> ConflictGraph:
    return ConflictGraph.from_edges([str(v) for v in h.nodes], [(str(a), str(b)) for a, b in h.edges])


def connected_graphs(min_n: int = 1, max_n: int = 7) -> list[ConflictGraph]:
    """Every connected graph on min_n..max_n vertices, one per isomorphism class."""
    out = []
    for h in graph_atlas_g():
        n = h.number_of_nodes()
        if min_n <= n <= max_n and nx.is_connected(h):
            out.append(from_nx(h))
    return out


def brute_alpha(g: ConflictGraph, subset=None) -> int:
    vs = list(g.vertices if subset is None else subset)
    for k in range(len(vs), 0, -1):
        for combo in itertools.combinations(vs, k):
            if g.is_independent(combo):
                return k
    return 0


def brute_maximal_cliques(g: ConflictGraph) -> set[frozenset]:
    cliques = [frozenset(c) for k in range(1, len(g) + 1)
               for c in itertools.combinations(g.vertices, k) if g.is_clique(c)]
    return {c for c in cliques if not any(c < d for d in cliques)}


def scipy_chi_f(g: ConflictGraph, x) -> float:
    """Float LP over every independent set (not only maximal ones)."""
    from scipy.optimize import linprog

    sets = [c for k in range(1, len(g) + 1) for c in itertools.combinations(g.vertices, k)
            if g.is_independent(c)]
    if not sets:
        return 0.0
    A = [[-1.0 if v in s else 0.0 for s in sets] for v in g.vertices]
    b = [-float(x.get(v, 0)) for v in g.vertices]
    res = linprog([1.0] * len(sets), A_ub=A, b_ub=b, bounds=(0, None), method="highs")
    assert res.status == 0
    return res.fun


def fr(s: str) -> Fraction:
    return Fraction(s)


@pytest.fixture
def criterion():
    """Record one acceptance criterion's outcome for the terminal summary."""

    class _Rec:
        def __call__(self, number: int, title: str, passed: bool, detail: str = ""):
            CRITERIA[number] = (f"{title}{' - ' + detail if detail else ''}", passed)
            assert passed, f"criterion {number} failed: {title} {detail}"

    return _Rec()


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
