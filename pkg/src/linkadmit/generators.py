"""Graph families, line graphs, unit disk graphs and seeded random instances."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import ConflictGraph, NetworkGraph, StructuralError, parse_rational


class Rng:
    """Seeded source of exact random choices.

    Draws raw 64-bit words from numpy's PCG64, whose raw stream is fixed for a
    given seed, and turns them into integers and rational coin flips without
    floating point.
    """

    def __init__(self, seed: int):
        self._bits = np.random.PCG64(seed)

    def word(self) -> int:
        return int(self._bits.random_raw())

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        top = (1 << 64) - (1 << 64) % n
        while True:
            w = self.word()
            if w < top:
                return w % n

    def bernoulli(self, p) -> bool:
        p = Fraction(p)
        return self.word() * p.denominator < p.numerator * (1 << 64)

    def shuffle(self, items: list) -> list:
        items = list(items)
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def _names(n: int, prefix: str = "v") -> list[str]:
    return [f"{prefix}{i}" for i in range(n)]


def star(d: int) -> ConflictGraph:
    """K_{1,d}: centre ``c``, leaves ``y1..yd``."""
    leaves = [f"y{i}" for i in range(1, d + 1)]
    return ConflictGraph.from_edges(["c", *leaves], [("c", y) for y in leaves])


def cycle(n: int) -> ConflictGraph:
    if n < 3:
        raise StructuralError("a cycle needs at least 3 vertices")
    vs = _names(n)
    return ConflictGraph.from_edges(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def path(n: int) -> ConflictGraph:
    vs = _names(n)
    return ConflictGraph.from_edges(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)])


def complete(n: int) -> ConflictGraph:
    vs = _names(n)
    return ConflictGraph.from_edges(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]])


def k4_minus_e() -> ConflictGraph:
    """K4 without the edge c-d."""
    return ConflictGraph.from_edges("abcd", [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def petersen() -> ConflictGraph:
    outer = [(f"o{i}", f"o{(i + 1) % 5}") for i in range(5)]
    spokes = [(f"o{i}", f"i{i}") for i in range(5)]
    inner = [(f"i{i}", f"i{(i + 2) % 5}") for i in range(5)]
    return ConflictGraph.from_edges([f"o{i}" for i in range(5)] + [f"i{i}" for i in range(5)],
                                    outer + spokes + inner)


def theorem3_family(clique_sizes: Sequence[int]) -> ConflictGraph:
    """Centre ``x`` joined to every vertex of disjoint cliques of the given sizes."""
    if any(k < 1 for k in clique_sizes):
        raise StructuralError("clique sizes must be positive")
    verts, edges = ["x"], []
    for i, k in enumerate(clique_sizes, 1):
        block = [f"L{i}_{j}" for j in range(1, k + 1)]
        verts += block
        edges += [("x", u) for u in block]
        edges += [(a, b) for j, a in enumerate(block) for b in block[j + 1:]]
    return ConflictGraph.from_edges(verts, edges)


def line_graph(n: NetworkGraph) -> ConflictGraph:
    """Primary interference: links conflict iff they share a node."""
    at: dict[str, list[str]] = {x: [] for x in n.nodes}
    for l in n.links:
        at[l.u].append(l.id)
        at[l.v].append(l.id)
    edges = set()
    for ids in at.values():
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                edges.add((a, b))
    return ConflictGraph.from_edges([l.id for l in n.links], sorted(edges))


def unit_disk(points: Sequence[Sequence], radius=1, names: Sequence[str] | None = None) -> ConflictGraph:
    """Disks of equal radius conflict iff they meet: squared distance <= (2r)^2, exactly."""
    r = parse_rational(radius)
    if r <= 0:
        raise StructuralError("radius must be positive")
    pts = [(parse_rational(x), parse_rational(y)) for x, y in points]
    names = list(names) if names is not None else [f"p{i}" for i in range(len(pts))]
    reach = (2 * r) ** 2
    edges = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dx, dy = pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]
            if dx * dx + dy * dy <= reach:
                edges.append((names[i], names[j]))
    return ConflictGraph.from_edges(names, edges)


def random_graph(n: int, edge_probability, seed: int) -> ConflictGraph:
    p = parse_rational(edge_probability)
    rng = Rng(seed)
    vs = _names(n)
    edges = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:] if rng.bernoulli(p)]
    return ConflictGraph.from_edges(vs, edges)


def random_points(n: int, box, seed: int, grid: int = 1000) -> list[tuple[Fraction, Fraction]]:
    """``n`` points on the rational grid of spacing box/grid in [0, box]^2."""
    box = parse_rational(box)
    rng = Rng(seed)
    return [(box * Fraction(rng.below(grid + 1), grid), box * Fraction(rng.below(grid + 1), grid))
            for _ in range(n)]


def random_network(n: int, link_probability, seed: int, max_mult: int = 1) -> NetworkGraph:
    p = parse_rational(link_probability)
    rng = Rng(seed)
    nodes = [f"n{i}" for i in range(n)]
    links = []
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            if rng.bernoulli(p):
                links.append((a, b, 1 + rng.below(max_mult)))
    return NetworkGraph.build(nodes, links)


def random_bipartite_network(left: int, right: int, link_probability, seed: int) -> NetworkGraph:
    p = parse_rational(link_probability)
    rng = Rng(seed)
    a_side = [f"a{i}" for i in range(left)]
    b_side = [f"b{i}" for i in range(right)]
    links = [(a, b) for a in a_side for b in b_side if rng.bernoulli(p)]
    return NetworkGraph.build(a_side + b_side, links)


def network(nodes: Iterable, links: Iterable) -> NetworkGraph:
    return NetworkGraph.build(nodes, links)
