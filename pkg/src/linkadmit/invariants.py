"""Graph invariants and closed-form worst-case predictions.

Exponential searches (independent sets, cliques) run on integer bitmasks and
are guarded by a vertex limit; maximal independent set listings are also
guarded by a count cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .core import (
    DEFAULT_LIMIT,
    ConflictGraph,
    NetworkGraph,
    NotApplicableError,
    ResourceLimitError,
    demand_sum,
)

DEFAULT_SET_CAP = 10_000


def default_limit() -> int:
    return int(os.environ.get("LINKADMIT_LIMIT", DEFAULT_LIMIT))


def _check_limit(count: int, limit: int | None) -> None:
    limit = default_limit() if limit is None else limit
    if count > limit:
        raise ResourceLimitError(f"{count} vertices exceeds the enumeration limit {limit}")


def _masks(g: ConflictGraph) -> tuple[list[str], dict[str, int], list[int]]:
    order = list(g.vertices)
    pos = {v: i for i, v in enumerate(order)}
    nbr = [0] * len(order)
    for i, v in enumerate(order):
        m = 0
        for w in g.adj[v]:
            m |= 1 << pos[w]
        nbr[i] = m
    return order, pos, nbr


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _max_independent(mask: int, nbr: list[int]) -> int:
    """Bitmask of a maximum independent set inside ``mask``.

    Branches on the closed neighbourhood of a minimum-degree vertex: some
    vertex of it belongs to every maximal independent set.
    """
    if not mask:
        return 0
    best_v, best_d = -1, None
    for v in _bits(mask):
        d = (nbr[v] & mask).bit_count()
        if best_d is None or d < best_d:
            best_v, best_d = v, d
            if d <= 1:
                break
    if best_d == 0:
        return (1 << best_v) | _max_independent(mask & ~(1 << best_v), nbr)
    best = 0
    for u in _bits((nbr[best_v] | (1 << best_v)) & mask):
        cand = (1 << u) | _max_independent(mask & ~nbr[u] & ~(1 << u), nbr)
        if cand.bit_count() > best.bit_count():
            best = cand
    return best


def max_independent_set(g: ConflictGraph, subset: Iterable[str] | None = None,
                        limit: int | None = None) -> list[str]:
    order, pos, nbr = _masks(g)
    members = order if subset is None else list(subset)
    mask = 0
    for v in members:
        g.neighbors(v)
        mask |= 1 << pos[v]
    _check_limit(mask.bit_count(), limit)
    found = _max_independent(mask, nbr)
    return [order[i] for i in _bits(found)]


def alpha(g: ConflictGraph, subset: Iterable[str] | None = None, limit: int | None = None) -> int:
    """Independence number of ``g[subset]`` (whole graph by default)."""
    return len(max_independent_set(g, subset, limit))


@dataclass(frozen=True)
class StarWitness:
    center: str | None
    leaves: tuple[str, ...]


def sigma(g: ConflictGraph, limit: int | None = None) -> tuple[int, StarWitness]:
    """Induced star number with a witnessing star (0 for edgeless graphs)."""
    best, witness = 0, StarWitness(None, ())
    for v in g.vertices:
        leaves = max_independent_set(g, g.adj[v], limit)
        if len(leaves) > best:
            best, witness = len(leaves), StarWitness(v, tuple(leaves))
    return best, witness


def sigma_value(g: ConflictGraph, limit: int | None = None) -> int:
    return sigma(g, limit)[0]


def max_degree(g: ConflictGraph) -> int:
    return max((len(g.adj[v]) for v in g.vertices), default=0)


def _degeneracy_order(mask: int, nbr: list[int]) -> list[int]:
    out = []
    rest = mask
    while rest:
        v = min(_bits(rest), key=lambda x: ((nbr[x] & rest).bit_count(), x))
        out.append(v)
        rest &= ~(1 << v)
    return out


def _bron_kerbosch(nbr: list[int], mask: int, cap: int | None) -> list[int]:
    found: list[int] = []

    def expand(R: int, P: int, X: int) -> None:
        if not P and not X:
            found.append(R)
            if cap is not None and len(found) > cap:
                raise ResourceLimitError(f"more than {cap} maximal sets")
            return
        pivot = max(_bits(P | X), key=lambda u: (P & nbr[u]).bit_count())
        for v in _bits(P & ~nbr[pivot]):
            bit = 1 << v
            expand(R | bit, P & nbr[v], X & nbr[v])
            P &= ~bit
            X |= bit

    P, X = mask, 0
    for v in _degeneracy_order(mask, nbr):
        bit = 1 << v
        expand(bit, P & nbr[v], X & nbr[v])
        P &= ~bit
        X |= bit
    return found


def _listing(order: list[str], masks: list[int]) -> list[frozenset[str]]:
    masks = sorted(masks, key=lambda m: sorted(_bits(m)))
    return [frozenset(order[i] for i in _bits(m)) for m in masks]


def maximal_cliques(g: ConflictGraph, limit: int | None = None,
                    cap: int | None = DEFAULT_SET_CAP) -> list[frozenset[str]]:
    """Inclusion-maximal cliques, each once, in a deterministic order."""
    _check_limit(len(g), limit)
    order, _, nbr = _masks(g)
    full = (1 << len(order)) - 1
    return _listing(order, _bron_kerbosch(nbr, full, cap))


def maximal_independent_sets(g: ConflictGraph, limit: int | None = None,
                             cap: int | None = DEFAULT_SET_CAP) -> list[frozenset[str]]:
    _check_limit(len(g), limit)
    order, _, nbr = _masks(g)
    full = (1 << len(order)) - 1
    co = [full & ~m & ~(1 << i) for i, m in enumerate(nbr)]
    return _listing(order, _bron_kerbosch(co, full, cap))


def is_union_of_cliques(g: ConflictGraph, vs: Iterable[str] | None = None) -> bool:
    h = g if vs is None else g.subgraph(vs)
    return all(h.subgraph(c).is_complete() for c in h.components())


def line_graph_cliques(n: NetworkGraph) -> list[frozenset[str]]:
    """Maximal cliques of the primary-interference conflict graph, read off the network.

    They are the node stars not swallowed by a triangle, plus the link triangles.
    Polynomial in the network size.
    """
    pair_to_id = {frozenset((l.u, l.v)): l.id for l in n.links}
    adj: dict[str, set[str]] = {x: set() for x in n.nodes}
    for l in n.links:
        adj[l.u].add(l.v)
        adj[l.v].add(l.u)
    found: set[frozenset[str]] = set()
    triangles: set[frozenset[str]] = set()
    for u in n.nodes:
        for v in adj[u]:
            for w in adj[u] & adj[v]:
                triangles.add(frozenset((pair_to_id[frozenset((u, v))],
                                         pair_to_id[frozenset((v, w))],
                                         pair_to_id[frozenset((u, w))])))
    found |= triangles
    for x in n.nodes:
        star = frozenset(pair_to_id[frozenset((x, y))] for y in adj[x])
        if not star:
            continue
        if len(star) == 2:
            a, b = sorted(adj[x])
            if b in adj[a]:
                continue
        if len(star) == 1:
            (y,) = adj[x]
            if len(adj[y]) > 1:
                continue
        found.add(star)
    rank = {l.id: i for i, l in enumerate(n.links)}
    return sorted(found, key=lambda s: sorted(rank[i] for i in s))


def chromatic_index_bound(n: NetworkGraph) -> Fraction:
    """max over links uv of mu(u) + mu(v) - mu(uv)."""
    at: dict[str, int] = {x: 0 for x in n.nodes}
    for l in n.links:
        at[l.u] += l.mult
        at[l.v] += l.mult
    return Fraction(max((at[l.u] + at[l.v] - l.mult for l in n.links), default=0))


def beta_mixed_predicted(g: ConflictGraph) -> Fraction | None:
    """Exact mixed-condition ratio when every neighbourhood is a union of cliques, else None."""
    if not g.vertices:
        return Fraction(0)
    best = Fraction(1)
    for v in g.vertices:
        nb = g.adj[v]
        if not is_union_of_cliques(g, nb):
            return None
        d = len(nb)
        if d == 0:
            continue
        eta = len(g.subgraph(nb).components())
        best = max(best, Fraction(eta * (1 + d), eta + d))
    return best


def row2_eligible(g: ConflictGraph) -> bool:
    return g.is_connected() and not g.is_complete() and not g.is_odd_cycle()


def beta_row2_predicted(g: ConflictGraph, limit: int | None = None) -> Fraction:
    if not row2_eligible(g):
        raise NotApplicableError("needs a connected graph that is neither complete nor an odd cycle")
    s = sigma_value(g, limit)
    tops = [v for v in g.vertices if alpha(g, g.adj[v], limit) == s]
    if any(len(g.adj[v]) > s for v in tops):
        return Fraction(s)
    return Fraction(s - 1)


def b_bound(g: ConflictGraph, x: Mapping[str, Fraction]) -> Fraction:
    """max_v x(v) + x(N(v)), an upper bound on the weighted fractional chromatic number."""
    return max((x.get(v, Fraction(0)) + demand_sum(x, g.adj[v]) for v in g.vertices),
               default=Fraction(0))
