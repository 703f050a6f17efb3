"""Local admission tests.

Each checker reads only what its rule allows: a link's own demand plus its
neighbours' demands or degree, or the demands inside one clique.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping

from .core import (
    ConflictGraph,
    NetworkGraph,
    NotApplicableError,
    StructuralError,
    demand_sum,
    make_demands,
    parse_rational,
)
from .invariants import line_graph_cliques, maximal_cliques

SUFFICIENT = "sufficient"
NECESSARY = "necessary"

# name -> (scale, semantics)
CLIQUE_PRESETS: dict[str, tuple[Fraction, str]] = {
    "necessary": (Fraction(1), NECESSARY),
    "line": (Fraction(4, 5), "sufficient on line graphs (imp <= 5/4)"),
    "udg": (Fraction(10, 21), "sufficient on unit disk graphs (imp <= 21/10)"),
    "shannon": (Fraction(2, 3), "sufficient on line graphs (Shannon edge colouring)"),
}


@dataclass(frozen=True)
class ReportRow:
    lhs: Fraction
    bound: Fraction
    passes: bool


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    semantics: str
    rows: Mapping[Hashable, ReportRow]

    @property
    def overall(self) -> bool:
        return all(r.passes for r in self.rows.values())

    def __bool__(self) -> bool:
        return self.overall

    def failing(self) -> list:
        return [k for k, r in self.rows.items() if not r.passes]


def _report(name: str, semantics: str, lhs: Mapping, bound: Fraction) -> ConditionReport:
    return ConditionReport(name, semantics, {k: ReportRow(v, bound, v <= bound) for k, v in lhs.items()})


def row_lhs(g: ConflictGraph, tau: Mapping, v: str) -> Fraction:
    return tau[v] + demand_sum(tau, g.adj[v])


def row2_lhs(g: ConflictGraph, tau: Mapping, v: str) -> Fraction:
    nb = g.adj[v]
    discount = min((tau[w] for w in nb), default=Fraction(0))
    return tau[v] + demand_sum(tau, nb) - discount


def degree_lhs(g: ConflictGraph, tau: Mapping, v: str) -> Fraction:
    return tau[v] * (len(g.adj[v]) + 1)


def mixed_lhs(g: ConflictGraph, tau: Mapping, v: str) -> Fraction:
    return min(row_lhs(g, tau, v), degree_lhs(g, tau, v))


def check_row(g: ConflictGraph, tau: Mapping, T) -> ConditionReport:
    tau = make_demands(g, tau)
    return _report("row", SUFFICIENT, {v: row_lhs(g, tau, v) for v in g.vertices}, parse_rational(T))


def check_row2_designated(g: ConflictGraph, tau: Mapping, T, designated: str) -> ConditionReport:
    if designated not in g:
        raise StructuralError(f"designated link {designated!r} is not a vertex")
    tau = make_demands(g, tau)
    lhs = {v: row_lhs(g, tau, v) if v == designated else row2_lhs(g, tau, v) for v in g.vertices}
    return _report("row2d", SUFFICIENT, lhs, parse_rational(T))


def row2_exclusion(g: ConflictGraph) -> str | None:
    """Why the undesignated strengthened rule is unsound here, or None."""
    for comp in g.components():
        h = g.subgraph(comp)
        if len(comp) >= 2 and h.is_complete():
            return f"component {list(comp)} is complete"
        if h.is_odd_cycle():
            return f"component {list(comp)} is an odd cycle"
    return None


def check_row2(g: ConflictGraph, tau: Mapping, T) -> ConditionReport:
    why = row2_exclusion(g)
    if why:
        raise NotApplicableError(f"row2 not applicable: {why}")
    tau = make_demands(g, tau)
    return _report("row2", SUFFICIENT, {v: row2_lhs(g, tau, v) for v in g.vertices}, parse_rational(T))


def check_degree(g: ConflictGraph, tau: Mapping, T) -> ConditionReport:
    tau = make_demands(g, tau)
    return _report("degree", SUFFICIENT, {v: degree_lhs(g, tau, v) for v in g.vertices}, parse_rational(T))


def check_mixed(g: ConflictGraph, tau: Mapping, T) -> ConditionReport:
    tau = make_demands(g, tau)
    return _report("mixed", SUFFICIENT, {v: mixed_lhs(g, tau, v) for v in g.vertices}, parse_rational(T))


def check_clique(g: ConflictGraph, tau: Mapping, T, scale=1, preset: str | None = None,
                 limit: int | None = None) -> ConditionReport:
    """tau(K) <= scale*T on every maximal clique K; rows keyed by clique tuples.

    At scale 1 a failure proves infeasibility.  Smaller scales admit only on
    the graph classes their preset names.
    """
    if preset is not None:
        try:
            scale, semantics = CLIQUE_PRESETS[preset]
        except KeyError:
            raise StructuralError(f"unknown clique preset {preset!r}") from None
    else:
        scale = parse_rational(scale)
        semantics = NECESSARY if scale == 1 else "sufficient if scale <= 1/imp(G)"
    tau = make_demands(g, tau)
    pos = {v: i for i, v in enumerate(g.vertices)}
    lhs = {}
    for K in maximal_cliques(g, limit):
        key = tuple(sorted(K, key=pos.__getitem__))
        lhs[key] = demand_sum(tau, K)
    name = "clique" if scale == 1 else f"clique-scaled={scale}"
    return _report(name, semantics, lhs, scale * parse_rational(T))


def make_link_demands(n: NetworkGraph, values: Mapping | None = None) -> dict[str, Fraction]:
    out = {l.id: Fraction(0) for l in n.links}
    for k, x in (values or {}).items():
        if k not in out:
            raise StructuralError(f"demand given for unknown link {k!r}")
        x = parse_rational(x)
        if x < 0:
            raise StructuralError(f"negative demand at {k!r}")
        out[k] = x
    return out


def node_loads(n: NetworkGraph, tau: Mapping[str, Fraction]) -> dict[str, Fraction]:
    load = {x: Fraction(0) for x in n.nodes}
    for l in n.links:
        load[l.u] += tau[l.id]
        load[l.v] += tau[l.id]
    return load


def check_row_primary(n: NetworkGraph, tau: Mapping, T) -> ConditionReport:
    """Row rule on the network itself: tau(u) + tau(v) - tau(uv) <= T."""
    tau = make_link_demands(n, tau)
    load = node_loads(n, tau)
    lhs = {l.id: load[l.u] + load[l.v] - tau[l.id] for l in n.links}
    return _report("row-primary", SUFFICIENT, lhs, parse_rational(T))


def check_clique_line_scaled(n: NetworkGraph, tau: Mapping, T) -> ConditionReport:
    """Node loads and link triangles at most 4/5 T."""
    tau = make_link_demands(n, tau)
    load = node_loads(n, tau)
    lhs: dict = dict(load)
    for K in line_graph_cliques(n):
        if len(K) == 3:
            ends = {x for i in K for x in (n.link(i).u, n.link(i).v)}
            if len(ends) == 3:
                lhs[tuple(sorted(K))] = demand_sum(tau, K)
    return _report("clique-line", SUFFICIENT, lhs, Fraction(4, 5) * parse_rational(T))


def check_shannon(n: NetworkGraph, tau: Mapping, T) -> ConditionReport:
    tau = make_link_demands(n, tau)
    return _report("shannon", SUFFICIENT, node_loads(n, tau), Fraction(2, 3) * parse_rational(T))


CONDITIONS = {
    "row": check_row,
    "row2": check_row2,
    "degree": check_degree,
    "mixed": check_mixed,
}

LHS = {
    "row": row_lhs,
    "row2": row2_lhs,
    "degree": degree_lhs,
    "mixed": mixed_lhs,
}
