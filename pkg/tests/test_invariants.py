from fractions import Fraction

import pytest
from networkx.generators.atlas import graph_atlas_g

from conftest import brute_alpha, brute_maximal_cliques, from_nx
from linkadmit import generators, oracle
from linkadmit.core import ConflictGraph, NetworkGraph, NotApplicableError, ResourceLimitError
from linkadmit.invariants import (
    alpha,
    b_bound,
    beta_mixed_predicted,
    beta_row2_predicted,
    chromatic_index_bound,
    line_graph_cliques,
    max_degree,
    maximal_cliques,
    maximal_independent_sets,
    sigma,
    sigma_value,
)

F = Fraction
ALL_SMALL = [from_nx(h) for h in graph_atlas_g() if h.number_of_nodes() <= 7]


def test_alpha_examples():
    assert alpha(generators.complete(4)) == 1
    assert alpha(generators.cycle(5)) == 2
    p = generators.petersen()
    assert brute_alpha(p) == 4
    assert alpha(p) == 4


def test_alpha_of_subset_and_empty():
    g = generators.cycle(6)
    assert alpha(g, []) == 0
    assert alpha(g, g.vertices[:3]) == 2


def test_alpha_matches_brute_force_on_random_graphs():
    for seed in range(60):
        g = generators.random_graph(9, F(2, 5), seed)
        assert alpha(g) == brute_alpha(g)


def test_limit_guards_enumeration():
    g = generators.random_graph(12, F(1, 2), 0)
    with pytest.raises(ResourceLimitError):
        alpha(g, limit=10)
    with pytest.raises(ResourceLimitError):
        maximal_cliques(g, limit=10)
    with pytest.raises(ResourceLimitError):
        maximal_independent_sets(g, cap=3)


@pytest.mark.parametrize("d", range(0, 7))
def test_sigma_star(d):
    s, w = sigma(generators.star(d))
    assert s == d
    if d:
        assert w.center == "c" and len(w.leaves) == d


def test_sigma_witness_is_induced_star():
    g = generators.petersen()
    s, w = sigma(g)
    assert len(w.leaves) == s == 3
    assert g.is_independent(w.leaves)
    assert all(g.adjacent(w.center, y) for y in w.leaves)


@pytest.mark.parametrize("n", range(1, 7))
def test_sigma_complete(n):
    assert sigma_value(generators.complete(n)) == (1 if n > 1 else 0)


def test_sigma_empty_graph():
    assert sigma_value(ConflictGraph.from_edges([])) == 0


def test_max_degree_examples():
    assert max_degree(generators.star(5)) == 5
    assert max_degree(generators.complete(4)) == 3
    assert max_degree(generators.cycle(5)) == 2


def test_sigma_bounded_by_degree_and_detects_cluster_graphs():
    for g in ALL_SMALL:
        s = sigma_value(g)
        assert s <= max_degree(g)
        clusters = all(g.subgraph(c).is_complete() for c in g.components())
        assert (s <= 1) == clusters


def test_maximal_cliques_examples():
    tri = ConflictGraph.from_edges("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert maximal_cliques(tri) == [frozenset("abc")]
    p3 = ConflictGraph.from_edges("abc", [("a", "b"), ("b", "c")])
    assert maximal_cliques(p3) == [frozenset("ab"), frozenset("bc")]
    k4e = generators.k4_minus_e()
    assert set(maximal_cliques(k4e)) == brute_maximal_cliques(k4e) == {frozenset("abc"), frozenset("abd")}


def test_maximal_cliques_match_brute_force():
    for g in ALL_SMALL[::3]:
        got = maximal_cliques(g)
        assert len(got) == len(set(got))
        assert set(got) == brute_maximal_cliques(g)


def test_maximal_independent_sets_are_maximal():
    g = generators.petersen()
    sets = maximal_independent_sets(g)
    for s in sets:
        assert g.is_independent(s)
        assert all(not g.is_independent(s | {v}) for v in g.vertices if v not in s)


def _net(nodes, links):
    return NetworkGraph.build(nodes, links)


def test_line_graph_cliques_examples():
    assert line_graph_cliques(_net("uvw", [("u", "v"), ("v", "w")])) == [frozenset({"u-v", "v-w"})]
    assert line_graph_cliques(_net("uvw", [("u", "v"), ("v", "w"), ("u", "w")])) == [
        frozenset({"u-v", "v-w", "u-w"})]
    assert line_graph_cliques(_net("uv", [("u", "v")])) == [frozenset({"u-v"})]


def test_line_graph_cliques_k4_network():
    n = _net("abcd", [(x, y) for i, x in enumerate("abcd") for y in "abcd"[i + 1:]])
    got = line_graph_cliques(n)
    # 4 node stars of 3 links and 4 link triangles
    assert len(got) == 8
    assert set(got) == set(maximal_cliques(generators.line_graph(n)))


def test_line_graph_cliques_agree_with_generic_enumeration():
    for seed in range(150):
        nodes = 3 + seed % 6
        n = generators.random_network(nodes, F(1 + seed % 4, 5), seed)
        assert set(line_graph_cliques(n)) == set(maximal_cliques(generators.line_graph(n)))


def test_chromatic_index_bound_examples():
    assert chromatic_index_bound(_net("uvw", [("u", "v"), ("v", "w"), ("u", "w")])) == 3
    assert chromatic_index_bound(_net("uv", [("u", "v", 5)])) == 5
    shannon = _net("uvw", [("u", "v", 2), ("v", "w", 2), ("u", "w", 2)])
    assert chromatic_index_bound(shannon) == 6
    lg = generators.line_graph(shannon)
    value, _ = oracle.chi_f(lg, {l.id: l.mult for l in shannon.links})
    assert value == 6


@pytest.mark.parametrize("eta", range(1, 7))
def test_beta_mixed_predicted_star(eta):
    assert beta_mixed_predicted(generators.star(eta)) == F(1 + eta, 2)


def test_beta_mixed_predicted_examples():
    assert beta_mixed_predicted(generators.complete(5)) == 1
    c6 = generators.cycle(6)
    assert beta_mixed_predicted(c6) == F(3, 2) == oracle.beta_mixed(c6).value
    assert beta_mixed_predicted(generators.k4_minus_e()) is None


def _augmented_star(s):
    leaves = [f"y{i}" for i in range(1, s + 1)]
    return ConflictGraph.from_edges(["c", *leaves, "z"],
                                    [("c", y) for y in leaves] + [("c", "z"), ("z", "y1")])


def test_beta_row2_predicted_examples():
    for d in range(2, 7):
        assert beta_row2_predicted(generators.star(d)) == d - 1
    assert beta_row2_predicted(generators.cycle(4)) == 1
    for s in (2, 3, 4):
        g = _augmented_star(s)
        assert sigma_value(g) == s
        assert beta_row2_predicted(g) == s == oracle.beta_row2(g).value


def test_beta_row2_predicted_exclusions():
    for g in (generators.cycle(5), generators.complete(4), ConflictGraph.from_edges("ab")):
        with pytest.raises(NotApplicableError):
            beta_row2_predicted(g)


def test_b_bound_examples():
    g = generators.star(3)
    half = {v: F(1, 2) for v in g.vertices}
    assert b_bound(g, half) == 2
    assert b_bound(g, {}) == 0
    c5 = generators.cycle(5)
    assert b_bound(c5, {v: F(1) for v in c5.vertices}) == 3
