"""Exact-arithmetic foundation: graphs, demands, interval sets and schedules.

Every time quantity is a :class:`fractions.Fraction`.  Intervals are half-open
``[a, b)`` so abutting intervals never overlap.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction

DEFAULT_LIMIT = 30


class StructuralError(ValueError):
    """Malformed input: unknown vertex, bad edge, non-independent set, ..."""


class ResourceLimitError(RuntimeError):
    """An exponential enumeration would exceed the configured limit."""


class NotApplicableError(ValueError):
    """The operation is undefined for this graph class."""


class ConditionFailed(ValueError):
    """A scheduler was asked to serve demands its admission test rejects."""

    def __init__(self, condition: str, vertex):
        super().__init__(f"{condition} condition fails at {vertex!r}")
        self.condition = condition
        self.vertex = vertex


_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+\s*/\s*\d+\s*$")


def parse_rational(value) -> Fraction:
    """Read ``"p/q"``, an integer, or a decimal string exactly.

    Floats are refused: ``0.1`` has no exact binary value.
    """
    if isinstance(value, bool):
        raise StructuralError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        raise StructuralError(f"floats are not exact, pass {value!r} as a string")
    if not isinstance(value, str):
        raise StructuralError(f"not a rational: {value!r}")
    text = value.strip()
    if _RATIONAL_RE.match(text):
        num, den = text.split("/")
        if int(den) == 0:
            raise StructuralError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den))
    try:
        dec = Decimal(text)
    except InvalidOperation:
        raise StructuralError(f"not a rational: {value!r}") from None
    if not dec.is_finite():
        raise StructuralError(f"not a rational: {value!r}")
    return Fraction(dec)


def format_rational(r: Fraction) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


# --------------------------------------------------------------------------
# graphs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ConflictGraph:
    """Undirected simple graph whose vertices are links."""

    vertices: tuple[str, ...]
    adj: Mapping[str, frozenset[str]] = field(repr=False)

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable[Sequence] = ()) -> "ConflictGraph":
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise StructuralError("duplicate vertex ids")
        nbrs: dict[str, set[str]] = {v: set() for v in verts}
        for e in edges:
            if len(e) != 2:
                raise StructuralError(f"edge must have two endpoints: {e!r}")
            u, v = str(e[0]), str(e[1])
            for w in (u, v):
                if w not in nbrs:
                    raise StructuralError(f"edge endpoint {w!r} is not a vertex")
            if u == v:
                raise StructuralError(f"self-loop at {u!r}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(verts, {v: frozenset(s) for v, s in nbrs.items()})

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.adj

    def neighbors(self, v: str) -> frozenset[str]:
        try:
            return self.adj[v]
        except KeyError:
            raise StructuralError(f"unknown vertex {v!r}") from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def adjacent(self, u: str, v: str) -> bool:
        return v in self.neighbors(u)

    @property
    def edges(self) -> list[tuple[str, str]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        out = []
        for u in self.vertices:
            for v in self.adj[u]:
                if pos[u] < pos[v]:
                    out.append((u, v))
        out.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
        return out

    def subgraph(self, keep: Iterable[str]) -> "ConflictGraph":
        keep_set = set(keep)
        for v in keep_set:
            self.neighbors(v)
        verts = tuple(v for v in self.vertices if v in keep_set)
        return ConflictGraph(verts, {v: self.adj[v] & keep_set for v in verts})

    def is_independent(self, vs: Iterable[str]) -> bool:
        vs = list(vs)
        for i, u in enumerate(vs):
            nu = self.neighbors(u)
            if any(w in nu for w in vs[i + 1:]):
                return False
        return True

    def is_clique(self, vs: Iterable[str]) -> bool:
        vs = list(vs)
        return all(self.adjacent(u, w) for i, u in enumerate(vs) for w in vs[i + 1:])

    def components(self) -> list[tuple[str, ...]]:
        """Connected components, each in vertex order, listed by first vertex."""
        seen: set[str] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            stack, comp = [s], {s}
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(tuple(v for v in self.vertices if v in comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_complete(self) -> bool:
        n = len(self.vertices)
        return all(len(self.adj[v]) == n - 1 for v in self.vertices)

    def is_cycle(self) -> bool:
        n = len(self.vertices)
        return n >= 3 and self.is_connected() and all(len(self.adj[v]) == 2 for v in self.vertices)

    def is_odd_cycle(self) -> bool:
        return self.is_cycle() and len(self.vertices) % 2 == 1


@dataclass(frozen=True)
class NetworkLink:
    u: str
    v: str
    mult: int = 1
    id: str = ""


@dataclass(frozen=True)
class NetworkGraph:
    """Network of nodes joined by links; ``mult`` counts parallel edges."""

    nodes: tuple[str, ...]
    links: tuple[NetworkLink, ...]

    @classmethod
    def build(cls, nodes: Iterable, links: Iterable) -> "NetworkGraph":
        node_t = tuple(str(n) for n in nodes)
        node_set = set(node_t)
        if len(node_set) != len(node_t):
            raise StructuralError("duplicate node ids")
        out = []
        for item in links:
            if isinstance(item, NetworkLink):
                link = item
            elif isinstance(item, Mapping):
                link = NetworkLink(str(item["u"]), str(item["v"]), int(item.get("mult", 1)),
                                   str(item.get("id", "")))
            else:
                u, v, *rest = item
                link = NetworkLink(str(u), str(v), int(rest[0]) if rest else 1)
            if link.u == link.v:
                raise StructuralError(f"link endpoints must differ: {link.u!r}")
            for w in (link.u, link.v):
                if w not in node_set:
                    raise StructuralError(f"link endpoint {w!r} is not a node")
            if link.mult < 1:
                raise StructuralError(f"multiplicity must be >= 1 on {link.u}-{link.v}")
            if not link.id:
                link = NetworkLink(link.u, link.v, link.mult, f"{link.u}-{link.v}")
            out.append(link)
        ids = [l.id for l in out]
        if len(set(ids)) != len(ids):
            raise StructuralError("duplicate link ids (parallel links: use mult)")
        pairs = [frozenset((l.u, l.v)) for l in out]
        if len(set(pairs)) != len(pairs):
            raise StructuralError("parallel links must be merged into one link with mult")
        return cls(node_t, tuple(out))

    def incident(self, node: str) -> list[NetworkLink]:
        return [l for l in self.links if node in (l.u, l.v)]

    def link(self, link_id: str) -> NetworkLink:
        for l in self.links:
            if l.id == link_id:
                return l
        raise StructuralError(f"unknown link {link_id!r}")


# --------------------------------------------------------------------------
# demands
# --------------------------------------------------------------------------


def make_demands(g: ConflictGraph, values: Mapping | None = None) -> dict[str, Fraction]:
    """Total demand map over ``g``: unknown ids rejected, missing ids read 0."""
    out = {v: Fraction(0) for v in g.vertices}
    for k, x in (values or {}).items():
        if k not in out:
            raise StructuralError(f"demand given for unknown vertex {k!r}")
        x = parse_rational(x)
        if x < 0:
            raise StructuralError(f"negative demand at {k!r}")
        out[k] = x
    return out


def demand_sum(tau: Mapping[str, Fraction], vs: Iterable[str]) -> Fraction:
    return sum((tau.get(v, Fraction(0)) for v in vs), Fraction(0))


# --------------------------------------------------------------------------
# interval sets
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalSet:
    """Finite disjoint union of half-open rational intervals, kept normalized."""

    intervals: tuple[tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[Sequence]) -> "IntervalSet":
        cleaned = []
        for a, b in pairs:
            a, b = parse_rational(a), parse_rational(b)
            if b < a:
                raise StructuralError(f"interval [{a}, {b}) is reversed")
            if a < b:
                cleaned.append((a, b))
        cleaned.sort()
        merged: list[list[Fraction]] = []
        for a, b in cleaned:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return cls(tuple((a, b) for a, b in merged))

    def __iter__(self) -> Iterator[tuple[Fraction, Fraction]]:
        return iter(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    @property
    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), Fraction(0))

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.of(self.intervals + other.intervals)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        xs, ys = self.intervals, other.intervals
        while i < len(xs) and j < len(ys):
            a = max(xs[i][0], ys[j][0])
            b = min(xs[i][1], ys[j][1])
            if a < b:
                out.append((a, b))
            if xs[i][1] < ys[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(tuple(out))

    def complement(self, lo: Fraction, hi: Fraction) -> "IntervalSet":
        """Gaps of this set inside ``[lo, hi)``."""
        out = []
        cur = lo
        for a, b in self.intervals:
            if b <= cur:
                continue
            if a >= hi:
                break
            if a > cur:
                out.append((cur, min(a, hi)))
            cur = max(cur, b)
        if cur < hi:
            out.append((cur, hi))
        return IntervalSet(tuple(out))

    def take_left(self, amount: Fraction) -> "IntervalSet":
        """The leftmost sub-union of measure ``amount``; raise if too short."""
        out = []
        left = Fraction(amount)
        for a, b in self.intervals:
            if left <= 0:
                break
            piece = min(b - a, left)
            out.append((a, a + piece))
            left -= piece
        if left > 0:
            raise ValueError(f"only {self.measure} free, {amount} requested")
        return IntervalSet(tuple(out))

    def within(self, lo: Fraction, hi: Fraction) -> bool:
        return all(lo <= a and b <= hi for a, b in self.intervals)


# --------------------------------------------------------------------------
# schedules
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Schedule:
    """Interval-form schedule: every vertex gets an :class:`IntervalSet` in ``[0, horizon]``."""

    horizon: Fraction
    assignment: Mapping[str, IntervalSet]

    def measure(self, v: str) -> Fraction:
        s = self.assignment.get(v)
        return s.measure if s is not None else Fraction(0)

    @property
    def span(self) -> Fraction:
        ends = [b for s in self.assignment.values() for _, b in s.intervals]
        return max(ends, default=Fraction(0))


@dataclass(frozen=True)
class SetSchedule:
    """Set-form schedule: durations on independent sets, laid out in the given order."""

    horizon: Fraction
    durations: tuple[tuple[tuple[str, ...], Fraction], ...]

    @classmethod
    def of(cls, durations: Mapping | Iterable, horizon=None) -> "SetSchedule":
        items = durations.items() if isinstance(durations, Mapping) else durations
        rows = tuple((tuple(sorted(k)), parse_rational(t)) for k, t in items)
        for k, t in rows:
            if t < 0:
                raise StructuralError(f"negative duration on {k}")
        total = sum((t for _, t in rows), Fraction(0))
        h = total if horizon is None else parse_rational(horizon)
        return cls(h, rows)

    @property
    def total(self) -> Fraction:
        return sum((t for _, t in self.durations), Fraction(0))

    def coverage(self) -> dict[str, Fraction]:
        cov: dict[str, Fraction] = {}
        for k, t in self.durations:
            for v in k:
                cov[v] = cov.get(v, Fraction(0)) + t
        return cov


@dataclass(frozen=True)
class Violation:
    kind: str  # "demand" | "overlap" | "horizon"
    vertices: tuple[str, ...]
    detail: str


@dataclass(frozen=True)
class ValidationVerdict:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_schedule(g: ConflictGraph, tau: Mapping, horizon, s: Schedule) -> ValidationVerdict:
    """Check demand coverage, pairwise disjointness on edges, and the horizon."""
    T = parse_rational(horizon)
    for v in s.assignment:
        if v not in g:
            raise StructuralError(f"schedule names unknown vertex {v!r}")
    demands = make_demands(g, tau)
    empty = IntervalSet()
    bad = []
    for v in g.vertices:
        got = s.assignment.get(v, empty)
        if got.measure < demands[v]:
            bad.append(Violation("demand", (v,), f"measure {got.measure} < demand {demands[v]}"))
        if not got.within(Fraction(0), T):
            bad.append(Violation("horizon", (v,), f"intervals leave [0, {T}]"))
    for u, w in g.edges:
        common = s.assignment.get(u, empty).intersection(s.assignment.get(w, empty))
        if common:
            a, b = common.intervals[0]
            bad.append(Violation("overlap", (u, w), f"overlap of measure {common.measure}, first [{a}, {b})"))
    return ValidationVerdict(tuple(bad))


def set_form_to_intervals(g: ConflictGraph, ss: SetSchedule) -> Schedule:
    """Lay the independent sets end to end from time 0."""
    if ss.total > ss.horizon:
        raise StructuralError(f"durations sum to {ss.total} > horizon {ss.horizon}")
    pieces: dict[str, list[tuple[Fraction, Fraction]]] = {v: [] for v in g.vertices}
    cur = Fraction(0)
    for k, t in ss.durations:
        for v in k:
            g.neighbors(v)
        if not g.is_independent(k):
            raise StructuralError(f"set {list(k)} is not independent")
        if t > 0:
            for v in k:
                pieces[v].append((cur, cur + t))
        cur += t
    return Schedule(ss.horizon, {v: IntervalSet.of(p) for v, p in pieces.items()})


@dataclass(frozen=True)
class FrameSchedule:
    """``slots`` equal slots per frame; ``blocks`` give (set, first slot, slot count)."""

    slots: int
    blocks: tuple[tuple[tuple[str, ...], int, int], ...]

    def active(self, slot: int) -> tuple[str, ...]:
        for k, first, count in self.blocks:
            if first <= slot < first + count:
                return k
        return ()


def discretize_schedule(ss: SetSchedule) -> FrameSchedule:
    """Split the frame into K equal slots, K the lcm of normalized denominators."""
    if ss.horizon <= 0:
        raise StructuralError("horizon must be positive")
    fracs = [t / ss.horizon for _, t in ss.durations]
    K = 1
    for f in fracs:
        K = math.lcm(K, f.denominator)
    blocks = []
    cur = 0
    for (k, _), f in zip(ss.durations, fracs):
        m = int(f * K)
        blocks.append((k, cur, m))
        cur += m
    if cur > K:
        raise StructuralError("durations exceed the horizon")
    return FrameSchedule(K, tuple(blocks))
