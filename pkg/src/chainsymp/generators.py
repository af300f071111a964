"""Random chain digraphs for property tests and sweeps.

Every generator takes a :class:`random.Random` so runs are reproducible.
Vertex lists are shuffled, so family members do not rely on a convenient
vertex order.
"""

from __future__ import annotations

import random
from typing import List, Sequence, Tuple

import networkx as nx

from chainsymp.graph import ChainDigraph, Edge, orient_tree, orient_unicyclic

EVEN = (2, 4, 6, 8)
ODD = (3, 5, 7)


def random_tree(rng: random.Random, n: int, prefix: str = "t") -> Tuple[List[str], List[Tuple[str, str]]]:
    """Uniform labelled tree on ``n`` vertices (Pruefer sequence)."""
    names = [f"{prefix}{i}" for i in range(n)]
    if n == 1:
        return names, []
    if n == 2:
        return names, [(names[0], names[1])]
    t = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
    return names, [(names[a], names[b]) for a, b in t.edges()]


def random_unicyclic(rng: random.Random, n: int, prefix: str = "u") -> Tuple[List[str], List[Tuple[str, str]]]:
    """Connected graph with exactly one cycle of length between 3 and ``n``."""
    if n < 3:
        raise ValueError("a simple unicyclic graph needs at least 3 vertices")
    c = rng.randint(3, n)
    names = [f"{prefix}{i}" for i in range(n)]
    edges = [(names[i], names[(i + 1) % c]) for i in range(c)]
    for i in range(c, n):
        edges.append((names[i], names[rng.randrange(i)]))
    return names, edges


def _finish(rng: random.Random, vertices: Sequence[str], edges: Sequence[Edge]) -> ChainDigraph:
    vertices = list(vertices)
    rng.shuffle(vertices)
    edges = list(edges)
    rng.shuffle(edges)
    return ChainDigraph(tuple(vertices), tuple(edges))


def random_f1(rng: random.Random, max_vertices: int = 10, max_kappa: int = 8) -> ChainDigraph:
    """Two leaves-to-root trees with even chain values."""
    evens = [k for k in EVEN if k <= max_kappa]
    total = rng.randint(2, max_vertices)
    na = rng.randint(1, total - 1)
    vertices: List[str] = []
    edges: List[Edge] = []
    for prefix, n in (("a", na), ("b", total - na)):
        names, und = random_tree(rng, n, prefix)
        root = rng.choice(names)
        vertices += names
        edges += [Edge(u, v, rng.choice(evens)) for u, v in orient_tree(names, und, root)]
    return _finish(rng, vertices, edges)


def random_f2(rng: random.Random, max_vertices: int = 10, max_kappa: int = 8) -> ChainDigraph:
    """One centripetal unicyclic component with even chain values."""
    evens = [k for k in EVEN if k <= max_kappa]
    names, und = random_unicyclic(rng, rng.randint(3, max_vertices))
    arcs = orient_unicyclic(names, und, rng.choice(("forward", "reverse")))
    return _finish(rng, names, [Edge(u, v, rng.choice(evens)) for u, v in arcs])


def random_f3(rng: random.Random, max_vertices: int = 10, max_kappa: int = 8) -> ChainDigraph:
    """A leaves-to-root tree with one odd edge, pointing into the root."""
    evens = [k for k in EVEN if k <= max_kappa]
    odds = [k for k in ODD if k <= max_kappa]
    names, und = random_tree(rng, rng.randint(2, max_vertices))
    root = rng.choice(names)
    arcs = orient_tree(names, und, root)
    into_root = [n for n, (_, head) in enumerate(arcs) if head == root]
    odd = rng.choice(into_root)
    edges = [Edge(u, v, rng.choice(odds) if n == odd else rng.choice(evens)) for n, (u, v) in enumerate(arcs)]
    return _finish(rng, names, edges)


def random_union(rng: random.Random, parts: int = 3, max_vertices: int = 6, max_kappa: int = 8) -> ChainDigraph:
    """Disjoint union of several family members with distinct vertex names."""
    makers = (random_f1, random_f2, random_f3)
    vertices: List[str] = []
    edges: List[Edge] = []
    for p in range(parts):
        g = rng.choice(makers)(rng, max(max_vertices, 3), max_kappa)
        ren = {v: f"p{p}_{v}" for v in g.vertices}
        vertices += [ren[v] for v in g.vertices]
        edges += [Edge(ren[e.tail], ren[e.head], e.kappa) for e in g.edges]
    return ChainDigraph(tuple(vertices), tuple(edges))


def random_digraph(rng: random.Random, n: int, p: float = 0.5, max_kappa: int = 8) -> ChainDigraph:
    """Simple random digraph (one orientation per chosen pair)."""
    names = [f"v{i + 1}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                a, b = (names[i], names[j]) if rng.random() < 0.5 else (names[j], names[i])
                edges.append(Edge(a, b, rng.randint(2, max_kappa)))
    return ChainDigraph(tuple(names), tuple(edges))


def random_edge_excess(rng: random.Random, max_kappa: int = 8) -> ChainDigraph:
    """Connected digraph with more edges than vertices."""
    while True:
        g = random_digraph(rng, rng.randint(4, 8), 0.7, max_kappa)
        if len(g.edges) > len(g.vertices):
            return g


def random_odd_dimension(rng: random.Random, max_kappa: int = 8) -> ChainDigraph:
    """An F1 member with one chain value raised by one, so the dimension is odd."""
    g = random_f1(rng, 10, max_kappa)
    if not g.edges:
        return ChainDigraph(g.vertices + ("extra",), ())
    n = rng.randrange(len(g.edges))
    edges = list(g.edges)
    e = edges[n]
    edges[n] = Edge(e.tail, e.head, e.kappa + 1)
    return ChainDigraph(g.vertices, tuple(edges))
