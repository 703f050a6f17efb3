"""Constructive schedulers: turn a passing admission test into concrete intervals.

All of them are greedy: a link takes the leftmost free time not held by an
already-scheduled neighbour.  They differ in the order links are served and
in which neighbours are pinned to time 0 first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import admission
from .core import (
    ConditionFailed,
    ConflictGraph,
    IntervalSet,
    Schedule,
    StructuralError,
    make_demands,
    parse_rational,
)


class ProofGapError(RuntimeError):
    """A step the sufficiency argument promises could not be carried out."""


def _greedy(g: ConflictGraph, tau: Mapping[str, Fraction], T: Fraction, order: Iterable[str],
            held: dict[str, IntervalSet] | None = None) -> dict[str, IntervalSet]:
    held = dict(held or {})
    zero = Fraction(0)
    for v in order:
        busy = IntervalSet()
        for w in g.adj[v]:
            if w in held:
                busy = busy.union(held[w])
        free = busy.complement(zero, T)
        try:
            held[v] = free.take_left(tau[v])
        except ValueError:
            raise ProofGapError(f"no room for {v!r}: free {free.measure}, demand {tau[v]}") from None
    return held


def _finish(g: ConflictGraph, T: Fraction, held: Mapping[str, IntervalSet]) -> Schedule:
    return Schedule(T, {v: held.get(v, IntervalSet()) for v in g.vertices})


def _require(report: admission.ConditionReport) -> None:
    bad = report.failing()
    if bad:
        raise ConditionFailed(report.condition, bad[0])


def schedule_row(g: ConflictGraph, tau: Mapping, T, order: Sequence[str] | None = None) -> Schedule:
    T = parse_rational(T)
    tau = make_demands(g, tau)
    _require(admission.check_row(g, tau, T))
    order = list(g.vertices) if order is None else list(order)
    if sorted(order) != sorted(g.vertices):
        raise StructuralError("order must list every vertex exactly once")
    return _finish(g, T, _greedy(g, tau, T, order))


def schedule_degree_or_mixed(g: ConflictGraph, tau: Mapping, T) -> Schedule:
    """Serve links by nondecreasing demand; this ordering needs global knowledge."""
    T = parse_rational(T)
    tau = make_demands(g, tau)
    _require(admission.check_mixed(g, tau, T))
    order = sorted(g.vertices, key=lambda v: (tau[v], v))
    return _finish(g, T, _greedy(g, tau, T, order))


def expansion_order(g: ConflictGraph, root: str, allowed: Iterable[str] | None = None) -> list[str]:
    """Breadth-first order from ``root``: every later vertex touches an earlier one."""
    allowed_set = set(g.vertices if allowed is None else allowed)
    order, seen = [root], {root}
    i = 0
    while i < len(order):
        for w in sorted(g.adj[order[i]] & allowed_set):
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    return order


def _designated_pass(g: ConflictGraph, tau, T, root: str, allowed: Iterable[str],
                     held: dict[str, IntervalSet]) -> dict[str, IntervalSet]:
    order = expansion_order(g, root, allowed)
    return _greedy(g, tau, T, reversed(order), held)


def schedule_row2_designated(g: ConflictGraph, tau: Mapping, T, designated: str) -> Schedule:
    """Serve links in reverse breadth-first order from the designated link, which goes last."""
    T = parse_rational(T)
    tau = make_demands(g, tau)
    _require(admission.check_row2_designated(g, tau, T, designated))
    if not g.is_connected():
        raise StructuralError("designated-link scheduling needs a connected conflict graph")
    return _finish(g, T, _designated_pass(g, tau, T, designated, g.vertices, {}))


def _connected_without(g: ConflictGraph, removed: set[str]) -> bool:
    rest = [v for v in g.vertices if v not in removed]
    return g.subgraph(rest).is_connected()


def cut_vertices(g: ConflictGraph) -> list[str]:
    return [v for v in g.vertices if not _connected_without(g, {v})]


def vertex_connectivity(g: ConflictGraph, cap: int = 3) -> int:
    """Exact vertex connectivity, reported as ``cap`` when it is at least ``cap``.

    Exhaustive search over small separators.  Complete graphs report n - 1.
    """
    from itertools import combinations

    n = len(g)
    if not g.is_connected():
        return 0
    if g.is_complete():
        return min(n - 1, cap)
    for k in range(1, cap):
        for cut in combinations(g.vertices, k):
            if not _connected_without(g, set(cut)):
                return k
    return cap


def _pack_left(held: Mapping[str, IntervalSet], members: Iterable[str], pivot: str,
               T: Fraction) -> dict[str, IntervalSet]:
    """Rearrange time for ``members`` so that ``pivot`` holds exactly [0, measure).

    The pivot's pieces slide to the front in order and the rest of [0, T)
    slides behind them; every member sees the same measure-preserving map,
    so overlaps between members are unchanged.
    """
    front = held[pivot]
    back = front.complement(Fraction(0), T)
    pieces = []
    cur = Fraction(0)
    for a, b in list(front) + list(back):
        pieces.append((a, b, cur - a))
        cur += b - a
    out = {}
    for v in members:
        moved = []
        for a, b in held[v]:
            for lo, hi, shift in pieces:
                x, y = max(a, lo), min(b, hi)
                if x < y:
                    moved.append((x + shift, y + shift))
        out[v] = IntervalSet.of(moved)
    return out


def _place_last(g: ConflictGraph, tau, T, v: str, held: dict[str, IntervalSet]) -> dict[str, IntervalSet]:
    return _greedy(g, tau, T, [v], held)


def _pinned_triple(g: ConflictGraph, tau, T, hub: str, a: str, b: str) -> dict[str, IntervalSet]:
    """Pin a, b at time 0, serve the rest of g - {a, b} from ``hub``, then ``hub``."""
    held = {a: IntervalSet.of([(0, tau[a])]), b: IntervalSet.of([(0, tau[b])])}
    rest = [v for v in g.vertices if v not in (a, b)]
    order = expansion_order(g, hub, rest)
    if len(order) != len(rest):
        raise ProofGapError(f"removing {a!r} and {b!r} disconnects the graph")
    return _greedy(g, tau, T, reversed(order), held)


def _cut_vertex_case(g: ConflictGraph, tau, T) -> dict[str, IntervalSet]:
    hub = cut_vertices(g)[0]
    rest = [v for v in g.vertices if v != hub]
    held = _greedy(g, tau, T, list(reversed(expansion_order(g, hub)))[:-1])
    parts = g.subgraph(rest).components()
    picks = []
    for comp in parts[:2]:
        picks.append(min((w for w in comp if w in g.adj[hub]), key=g.vertices.index))
    for comp, pivot in zip(parts[:2], picks):
        held.update(_pack_left(held, comp, pivot, T))
    return _place_last(g, tau, T, hub, held)


def _even_cycle(g: ConflictGraph, tau, T) -> dict[str, IntervalSet]:
    start = g.vertices[0]
    order, prev, cur = [start], None, start
    while True:
        nxt = min((w for w in g.adj[cur] if w != prev), key=g.vertices.index)
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    held = {}
    for i, v in enumerate(order):
        held[v] = IntervalSet.of([(0, tau[v])] if i % 2 == 0 else [(T - tau[v], T)])
    return held


def _three_connected_case(g: ConflictGraph, tau, T) -> dict[str, IntervalSet]:
    for hub in g.vertices:
        nb = sorted(g.adj[hub], key=g.vertices.index)
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                if not g.adjacent(a, b):
                    return _pinned_triple(g, tau, T, hub, a, b)
    raise ProofGapError("no induced path of length two in a non-complete graph")


def _two_connected_case(g: ConflictGraph, tau, T) -> dict[str, IntervalSet]:
    """Find hub, other with hub a cut vertex of g - other, and neighbours a, b of
    hub in different pieces with g - {a, b} connected."""
    for other in g.vertices:
        h = g.subgraph(v for v in g.vertices if v != other)
        for hub in cut_vertices(h):
            parts = h.subgraph(v for v in h.vertices if v != hub).components()
            for i, p in enumerate(parts):
                for q in parts[i + 1:]:
                    for a in p:
                        if a not in g.adj[hub]:
                            continue
                        for b in q:
                            if b in g.adj[hub] and _connected_without(g, {a, b}):
                                return _pinned_triple(g, tau, T, hub, a, b)
    raise ProofGapError("no cut vertex of g - x with separated neighbours leaving g - {a, b} connected")


def _row2_component(g: ConflictGraph, tau, T) -> dict[str, IntervalSet]:
    if len(g) == 1:
        return _greedy(g, tau, T, g.vertices)
    r = vertex_connectivity(g)
    if r == 1:
        return _cut_vertex_case(g, tau, T)
    if r >= 3:
        return _three_connected_case(g, tau, T)
    if max(len(g.adj[v]) for v in g.vertices) <= 2:
        return _even_cycle(g, tau, T)
    return _two_connected_case(g, tau, T)


def schedule_row2(g: ConflictGraph, tau: Mapping, T) -> Schedule:
    """Schedule under the strengthened row rule without a designated link.

    Case split on vertex connectivity.  Every branch arranges for two
    nonadjacent neighbours of one hub link to overlap, which pays for the
    discount the hub takes.
    """
    T = parse_rational(T)
    tau = make_demands(g, tau)
    _require(admission.check_row2(g, tau, T))
    held: dict[str, IntervalSet] = {}
    for comp in g.components():
        h = g.subgraph(comp)
        held.update(_row2_component(h, {v: tau[v] for v in comp}, T))
    return _finish(g, T, held)


SCHEDULERS = {
    "row": schedule_row,
    "degree": schedule_degree_or_mixed,
    "mixed": schedule_degree_or_mixed,
    "row2": schedule_row2,
}
