"""Centralized ground truth by exact linear programming.

``chi_f`` is the weighted fractional chromatic number over maximal independent
set columns.  The worst-case ratios maximize a condition's left-hand side over
the independent set polytope, one LP per vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from . import admission
from .core import ConflictGraph, SetSchedule, StructuralError, demand_sum, make_demands, parse_rational
from .generators import Rng
from .invariants import maximal_cliques, maximal_independent_sets
from .lp import maximize


def chi_f(g: ConflictGraph, x: Mapping | None = None, limit: int | None = None) -> tuple[Fraction, SetSchedule]:
    """Minimum total duration covering weights ``x`` (default all ones), with an optimal schedule.

    Solved through the packing dual; the covering durations are its dual values.
    """
    x = make_demands(g, {v: 1 for v in g.vertices} if x is None else x)
    support = [v for v in g.vertices if x[v] > 0]
    if not support:
        return Fraction(0), SetSchedule(Fraction(0), ())
    h = g.subgraph(support)
    sets = maximal_independent_sets(h, limit)
    idx = {v: i for i, v in enumerate(h.vertices)}
    A = []
    for s in sets:
        row = [0] * len(h.vertices)
        for v in s:
            row[idx[v]] = 1
        A.append(row)
    res = maximize([x[v] for v in h.vertices], A, [1] * len(sets))
    rows = tuple((tuple(sorted(s)), t) for s, t in zip(sets, res.duals) if t > 0)
    sched = SetSchedule(res.value, rows)
    cov = sched.coverage()
    if sched.total != res.value or any(cov.get(v, 0) < x[v] for v in support):
        raise RuntimeError("LP certificate does not cover the weights")
    return res.value, sched


def feasible(g: ConflictGraph, tau: Mapping, T, limit: int | None = None) -> bool:
    return chi_f(g, tau, limit)[0] <= parse_rational(T)


def t_clique(g: ConflictGraph, tau: Mapping, limit: int | None = None) -> Fraction:
    tau = make_demands(g, tau)
    return max((demand_sum(tau, K) for K in maximal_cliques(g, limit)), default=Fraction(0))


@dataclass(frozen=True)
class BetaResult:
    value: Fraction
    witness: Mapping[str, Fraction] = field(default_factory=dict)
    vertex: str | None = None
    neighbor: str | None = None


def _polytope_lp(h: ConflictGraph, objective: Mapping[str, Fraction],
                 extra: Callable[[dict[str, int], int], list[tuple[dict[int, Fraction], Fraction]]] | None = None,
                 with_z: bool = False, limit: int | None = None) -> tuple[Fraction, dict[str, Fraction]]:
    """max objective(tau) (or z) over the independent set polytope of ``h``.

    Variables: tau per vertex, t per maximal independent set, optionally z.
    Coupling rows tau_v - sum_{I containing v} t_I <= 0 and sum t_I <= 1.
    """
    verts = list(h.vertices)
    sets = maximal_independent_sets(h, limit)
    n, k = len(verts), len(sets)
    col = {v: i for i, v in enumerate(verts)}
    width = n + k + (1 if with_z else 0)
    A, b = [], []
    for v in verts:
        row = [0] * width
        row[col[v]] = 1
        for j, s in enumerate(sets):
            if v in s:
                row[n + j] = -1
        A.append(row)
        b.append(0)
    A.append([0] * n + [1] * k + ([0] if with_z else []))
    b.append(1)
    if extra is not None:
        for coeffs, rhs in extra(col, n + k):
            row = [0] * width
            for i, a in coeffs.items():
                row[i] = a
            A.append(row)
            b.append(rhs)
    c = [0] * width
    if with_z:
        c[-1] = 1
    else:
        for v, a in objective.items():
            c[col[v]] = a
    res = maximize(c, A, b)
    return res.value, {v: res.x[col[v]] for v in verts}


def _closed_nbhd(g: ConflictGraph, v: str) -> ConflictGraph:
    return g.subgraph(g.adj[v] | {v})


def _widen(g: ConflictGraph, w: Mapping[str, Fraction]) -> dict[str, Fraction]:
    out = {u: Fraction(0) for u in g.vertices}
    out.update(w)
    return out


# Every left-hand side below depends only on the closed neighbourhood N[v], and
# the projection of the independent set polytope onto N[v] is the polytope of
# g[N[v]]; witnesses are padded with zeros.


def _vertex_row(g: ConflictGraph, v: str, limit) -> tuple[Fraction, dict]:
    h = _closed_nbhd(g, v)
    return _polytope_lp(h, {u: 1 for u in h.vertices}, limit=limit)


def beta_row(g: ConflictGraph, limit: int | None = None) -> BetaResult:
    best = BetaResult(Fraction(0))
    for v in g.vertices:
        val, w = _vertex_row(g, v, limit)
        if val > best.value:
            best = BetaResult(val, _widen(g, w), v)
    return best


def beta_degree(g: ConflictGraph, limit: int | None = None) -> BetaResult:
    best = BetaResult(Fraction(0))
    for v in g.vertices:
        h = _closed_nbhd(g, v)
        val, w = _polytope_lp(h, {v: len(g.adj[v]) + 1}, limit=limit)
        if val > best.value:
            best = BetaResult(val, _widen(g, w), v)
    return best


def beta_mixed(g: ConflictGraph, limit: int | None = None) -> BetaResult:
    """max over v of max z with z <= row lhs and z <= degree lhs at v."""
    best = BetaResult(Fraction(0))
    for v in g.vertices:
        h = _closed_nbhd(g, v)

        def extra(col, z, v=v, h=h):
            row = {z: Fraction(1)}
            for u in h.vertices:
                row[col[u]] = Fraction(-1)
            deg = {z: Fraction(1), col[v]: -Fraction(len(g.adj[v]) + 1)}
            return [(row, Fraction(0)), (deg, Fraction(0))]

        val, w = _polytope_lp(h, {}, extra=extra, with_z=True, limit=limit)
        if val > best.value:
            best = BetaResult(val, _widen(g, w), v)
    return best


def beta_row2(g: ConflictGraph, limit: int | None = None) -> BetaResult:
    """max over v and neighbours j of tau(v) + tau(N(v)) - tau(j) on the polytope.

    An isolated vertex has no discount and contributes its row value.  A
    vertex whose row value cannot beat the best so far is skipped: dropping
    tau(j) >= 0 never raises the objective.
    """
    best = BetaResult(Fraction(0))
    for v in g.vertices:
        row_val, row_w = _vertex_row(g, v, limit)
        if not g.adj[v]:
            if row_val > best.value:
                best = BetaResult(row_val, _widen(g, row_w), v)
            continue
        if row_val <= best.value:
            continue
        h = _closed_nbhd(g, v)
        for j in sorted(g.adj[v], key=g.vertices.index):
            obj = {u: Fraction(1) for u in h.vertices}
            obj[j] = Fraction(0)
            val, w = _polytope_lp(h, obj, limit=limit)
            if val > best.value:
                best = BetaResult(val, _widen(g, w), v, j)
    return best


BETAS = {
    "row": beta_row,
    "degree": beta_degree,
    "mixed": beta_mixed,
    "row2": beta_row2,
}


def random_demands(g: ConflictGraph, rng: Rng, denominator: int = 12, density: Fraction = Fraction(1)) -> dict[str, Fraction]:
    out = {}
    for v in g.vertices:
        if density < 1 and not rng.bernoulli(density):
            out[v] = Fraction(0)
        else:
            out[v] = Fraction(rng.below(denominator + 1), denominator)
    return out


def imp_estimate(g: ConflictGraph, samples: int = 50, seed: int = 0, subset_cap: int = 5,
                 subset_budget: int = 512, limit: int | None = None) -> tuple[Fraction, dict[str, Fraction]]:
    """Certified lower bound on the imperfection ratio, with the demand attaining it.

    Tries the all-ones vector, 0/1 indicators of small vertex subsets (at most
    ``subset_budget`` of them, smallest first) and ``samples`` random rational
    vectors.
    """
    if not g.vertices:
        return Fraction(1), {}
    candidates: list[dict[str, Fraction]] = [{v: Fraction(1) for v in g.vertices}]
    budget = subset_budget
    for size in range(1, min(subset_cap, len(g)) + 1):
        for combo in itertools.combinations(g.vertices, size):
            if budget <= 0:
                break
            candidates.append({v: Fraction(1) for v in combo})
            budget -= 1
    rng = Rng(seed)
    for _ in range(samples):
        candidates.append(random_demands(g, rng))
    best, best_tau = Fraction(1), candidates[0]
    for tau in candidates:
        tau = make_demands(g, tau)
        clique = t_clique(g, tau, limit)
        if clique == 0:
            continue
        ratio = chi_f(g, tau, limit)[0] / clique
        if ratio > best:
            best, best_tau = ratio, tau
    return best, make_demands(g, best_tau)


def sample_polytope(g: ConflictGraph, rng: Rng, limit: int | None = None, denominator: int = 24) -> dict[str, Fraction]:
    """A random point of the independent set polytope: random sub-convex mix of maximal sets."""
    sets = maximal_independent_sets(g, limit)
    weights = [rng.below(denominator + 1) for _ in sets]
    total = sum(weights) + rng.below(denominator + 1)
    tau = {v: Fraction(0) for v in g.vertices}
    if total == 0:
        return tau
    for s, wgt in zip(sets, weights):
        for v in s:
            tau[v] += Fraction(wgt, total)
    return tau


def scaling_check(g: ConflictGraph, condition: str, beta, samples: int = 100, seed: int = 0,
                  limit: int | None = None) -> bool:
    """Empirical sandwich test for a condition and a claimed ratio ``beta``.

    Sufficient conditions: every sampled point of the polytope has lhs <= beta,
    and every sample passing at T = 1 is feasible.  ``clique``: every polytope
    point has clique sums <= beta, and every sample whose clique sums are
    <= 1/beta is feasible.
    """
    beta = parse_rational(beta)
    rng = Rng(seed)
    if condition == "clique":
        cliques = maximal_cliques(g, limit)
        for _ in range(samples):
            tau = sample_polytope(g, rng, limit)
            if any(demand_sum(tau, K) > beta for K in cliques):
                return False
            tau = random_demands(g, rng)
            if all(demand_sum(tau, K) <= 1 / beta for K in cliques) and not feasible(g, tau, 1, limit):
                return False
        return True
    if condition not in admission.LHS:
        raise StructuralError(f"unknown condition {condition!r}")
    lhs = admission.LHS[condition]
    for _ in range(samples):
        tau = sample_polytope(g, rng, limit)
        if any(lhs(g, tau, v) > beta for v in g.vertices):
            return False
        tau = random_demands(g, rng)
        if all(lhs(g, tau, v) <= 1 for v in g.vertices) and not feasible(g, tau, 1, limit):
            return False
    return True
