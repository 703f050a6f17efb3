from fractions import Fraction

import pytest

from conftest import connected_graphs
from linkadmit import admission, generators, oracle
from linkadmit.core import (
    ConditionFailed,
    ConflictGraph,
    NotApplicableError,
    StructuralError,
    validate_schedule,
)
from linkadmit.scheduler import (
    _greedy,
    SCHEDULERS,
    cut_vertices,
    expansion_order,
    schedule_degree_or_mixed,
    schedule_row,
    schedule_row2,
    schedule_row2_designated,
    vertex_connectivity,
)

F = Fraction


def p3():
    return ConflictGraph.from_edges("abc", [("a", "b"), ("b", "c")])


def spans(s):
    return {v: s.assignment[v].intervals for v in s.assignment}


def test_row_trace_greedy_and_refusal():
    tau = {"a": F(1, 2), "b": F(1, 4), "c": F(1, 2)}
    # the centre's row is 5/4, so the public entry point refuses
    with pytest.raises(ConditionFailed):
        schedule_row(p3(), tau, 1, order="abc")
    held = _greedy(p3(), tau, F(1), "abc")
    assert {v: held[v].intervals for v in held} == {
        "a": ((0, F(1, 2)),), "b": ((F(1, 2), F(3, 4)),), "c": ((0, F(1, 2)),)}


def test_row_trace_passing():
    s = schedule_row(p3(), {"a": "1/2", "b": "1/4", "c": "1/4"}, 1, order="abc")
    assert spans(s) == {"a": ((0, F(1, 2)),), "b": ((F(1, 2), F(3, 4)),), "c": ((0, F(1, 4)),)}


def test_row_single_vertex():
    g = ConflictGraph.from_edges(["x"])
    assert spans(schedule_row(g, {"x": 3}, 3)) == {"x": ((0, 3),)}


def test_row_refuses_with_failing_vertex():
    with pytest.raises(ConditionFailed) as e:
        schedule_row(p3(), {"a": "1/10", "b": "1/10", "c": "9/10"}, 1)
    assert e.value.vertex == "b"


def test_row_rejects_bad_order():
    with pytest.raises(StructuralError):
        schedule_row(p3(), {}, 1, order="ab")


def test_mixed_trace():
    s = schedule_degree_or_mixed(p3(), {"a": "6/10", "b": "3/10", "c": "6/10"}, 1)
    assert spans(s) == {"b": ((0, F(3, 10)),), "a": ((F(3, 10), F(9, 10)),), "c": ((F(3, 10), F(9, 10)),)}


def test_degree_tight_uniform():
    for g in (generators.petersen(), generators.star(5), generators.complete(4)):
        d = max(len(g.adj[v]) for v in g.vertices)
        tau = {v: F(1, d + 1) for v in g.vertices}
        assert validate_schedule(g, tau, 1, schedule_degree_or_mixed(g, tau, 1)).ok


def test_designated_k3():
    g = generators.complete(3)
    tau = {v: F(1, 3) for v in g.vertices}
    s = schedule_row2_designated(g, tau, 1, "v0")
    assert validate_schedule(g, tau, 1, s).ok and s.span == 1


def test_designated_leaf_trace():
    s = schedule_row2_designated(p3(), {v: F(1, 2) for v in "abc"}, 1, "a")
    assert spans(s) == {"c": ((0, F(1, 2)),), "b": ((F(1, 2), 1),), "a": ((0, F(1, 2)),)}


def test_designated_errors():
    with pytest.raises(ConditionFailed):
        schedule_row2_designated(p3(), {v: F(1, 2) for v in "abc"}, 1, "b")
    two = ConflictGraph.from_edges("abz", [("a", "b")])
    with pytest.raises(StructuralError):
        schedule_row2_designated(two, {}, 1, "a")
    s = schedule_row2_designated(p3(), {}, 1, "a")
    assert all(s.measure(v) == 0 for v in "abc")


def test_expansion_order_is_connected():
    g = generators.petersen()
    order = expansion_order(g, "o0")
    assert order[0] == "o0" and sorted(order) == sorted(g.vertices)
    for i, v in enumerate(order[1:], 1):
        assert g.adj[v] & set(order[:i])


def test_c4_alternates():
    g = generators.cycle(4)
    s = schedule_row2(g, {v: F(1, 2) for v in g.vertices}, 1)
    assert spans(s) == {"v0": ((0, F(1, 2)),), "v1": ((F(1, 2), 1),),
                        "v2": ((0, F(1, 2)),), "v3": ((F(1, 2), 1),)}


def test_k4_minus_e():
    g = generators.k4_minus_e()
    tau = {v: F(1, 3) for v in g.vertices}
    assert admission.check_row2(g, tau, 1).overall
    assert validate_schedule(g, tau, 1, schedule_row2(g, tau, 1)).ok


def test_row2_star_schedules_at_discounted_bound():
    # leaves overlap so the centre only pays for one of them
    g = ConflictGraph.from_edges("cxyz", [("c", "x"), ("c", "y"), ("x", "z")])
    tau = {"c": F(1, 2), "x": F(1, 2), "y": F(1, 2), "z": F(1, 2)}
    assert not admission.check_row(g, tau, 1).overall
    assert admission.check_row2(g, tau, 1).overall
    assert validate_schedule(g, tau, 1, schedule_row2(g, tau, 1)).ok


def test_row2_not_applicable():
    with pytest.raises(NotApplicableError):
        schedule_row2(generators.cycle(5), {}, 1)


def test_connectivity_helpers():
    assert vertex_connectivity(generators.path(4)) == 1
    assert vertex_connectivity(generators.cycle(6)) == 2
    assert vertex_connectivity(generators.petersen()) == 3
    assert cut_vertices(generators.star(3)) == ["c"]
    assert cut_vertices(generators.cycle(5)) == []


def _tight(g, cond, rng):
    """Random demand scaled so the worst row of ``cond`` sits exactly at 1."""
    tau = oracle.random_demands(g, rng, 12)
    worst = max(admission.LHS[cond](g, tau, v) for v in g.vertices)
    return {v: x / worst for v, x in tau.items()} if worst else tau


@pytest.mark.parametrize("cond", ["row", "degree", "mixed"])
def test_schedulers_validate_and_match_demand(cond):
    for seed in range(150):
        rng = generators.Rng(seed)
        g = generators.random_graph(2 + rng.below(9), F(1 + rng.below(4), 5), seed)
        tau = _tight(g, cond, rng)
        s = SCHEDULERS[cond](g, tau, 1)
        assert validate_schedule(g, tau, 1, s).ok
        assert all(s.measure(v) == tau[v] for v in g.vertices)


def test_row2_exhaustive_small():
    graphs = [g for g in connected_graphs(2, 5) if admission.row2_exclusion(g) is None]
    for i, g in enumerate(graphs):
        rng = generators.Rng(i)
        for _ in range(5):
            tau = _tight(g, "row2", rng)
            assert validate_schedule(g, tau, 1, schedule_row2(g, tau, 1)).ok


def test_determinism():
    g = generators.random_graph(9, F(1, 3), 4)
    tau = _tight(g, "mixed", generators.Rng(1))
    for name in ("row", "degree", "mixed"):
        if admission.CONDITIONS[name](g, tau, 1).overall:
            assert SCHEDULERS[name](g, tau, 1) == SCHEDULERS[name](g, tau, 1)
