"""Chain digraphs: validation, canonical orientations and family membership.

A chain digraph is a simple digraph with ordered vertices and an integer
``kappa >= 2`` on every edge. The vertex list order is the total order
``v_1 < ... < v_m`` used by every downstream basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import networkx as nx


class GraphError(ValueError):
    """Base class for malformed graph input."""


class DuplicateVertex(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class ParallelOrAntiparallelEdge(GraphError):
    pass


class KappaBelowTwo(GraphError):
    pass


class NotATree(GraphError):
    pass


class RootAbsent(GraphError):
    pass


class NotUnicyclic(GraphError):
    pass


@dataclass(frozen=True)
class Edge:
    tail: str
    head: str
    kappa: int = 2

    @property
    def pair(self) -> tuple[str, str]:
        return (self.tail, self.head)


@dataclass(frozen=True)
class ChainDigraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self,
            "edges",
            tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges),
        )
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    def index(self, vertex: str) -> int:
        """0-based position of ``vertex`` in the vertex order."""
        try:
            return self._index[vertex]
        except KeyError:
            raise UnknownVertex(vertex) from None

    @property
    def k(self) -> int:
        """Largest chain value, or 1 for an edgeless digraph."""
        return max((e.kappa for e in self.edges), default=1)

    def out_degree(self) -> dict[str, int]:
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            deg[e.tail] += 1
        return deg

    def underlying(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(e.pair for e in self.edges)
        return g

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"tail": e.tail, "head": e.head, "kappa": e.kappa} for e in self.edges
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ChainDigraph":
        try:
            vertices = [str(v) for v in data["vertices"]]
            edges = []
            for e in data["edges"]:
                kappa = e["kappa"]
                if isinstance(kappa, bool) or not isinstance(kappa, int):
                    raise GraphError(f"kappa must be an integer, got {kappa!r}")
                edges.append(Edge(str(e["tail"]), str(e["head"]), kappa))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed chain digraph: {exc!r}") from None
        return cls(tuple(vertices), tuple(edges))


def validate(g: ChainDigraph) -> ChainDigraph:
    """Raise a :class:`GraphError` subclass if ``g`` is not a chain digraph."""
    seen = set()
    for v in g.vertices:
        if v in seen:
            raise DuplicateVertex(v)
        seen.add(v)
    pairs = set()
    for e in g.edges:
        for v in e.pair:
            if v not in seen:
                raise UnknownVertex(v)
        if e.tail == e.head:
            raise SelfLoop(e.tail)
        key = frozenset(e.pair)
        if key in pairs:
            raise ParallelOrAntiparallelEdge(f"{e.tail} - {e.head}")
        pairs.add(key)
        if e.kappa < 2:
            raise KappaBelowTwo(f"({e.tail}, {e.head}) has kappa {e.kappa}")
    return g


# -- orientations ------------------------------------------------------------


def _undirected(vertices: Sequence[str], edges: Iterable[Sequence[str]]) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(vertices)
    for u, v in edges:
        if u == v:
            raise SelfLoop(u)
        g.add_edge(u, v)
    return g


def orient_tree(
    vertices: Sequence[str], edges: Iterable[Sequence[str]], root: str
) -> list[tuple[str, str]]:
    """Orient a tree from the leaves to ``root``.

    Returns ``(tail, head)`` pairs, one per non-root vertex, listed in
    breadth-first order from the root.
    """
    g = _undirected(vertices, edges)
    if root not in g:
        raise RootAbsent(root)
    if not nx.is_tree(g):
        raise NotATree(f"{g.number_of_nodes()} vertices, {g.number_of_edges()} edges")
    return [(child, parent) for parent, child in nx.bfs_edges(g, root)]


def _cycle_vertices(g: nx.Graph, order: dict[str, int]) -> list[str]:
    cycle = [u for u, _ in nx.find_cycle(g)]
    start = min(cycle, key=order.__getitem__)
    i = cycle.index(start)
    cycle = cycle[i:] + cycle[:i]
    # walk from the minimum vertex toward its smaller cycle neighbour
    if order[cycle[-1]] < order[cycle[1]]:
        cycle = [cycle[0]] + cycle[:0:-1]
    return cycle


def orient_unicyclic(
    vertices: Sequence[str],
    edges: Iterable[Sequence[str]],
    cycle_direction: Literal["forward", "reverse"] = "forward",
) -> list[tuple[str, str]]:
    """Orient a connected unicyclic graph centripetally.

    The cycle is traversed from its minimum vertex toward that vertex's
    smaller cycle neighbour (``"forward"``) or the opposite way; every
    pendant tree points toward its cycle vertex.
    """
    vertices = list(vertices)
    g = _undirected(vertices, edges)
    if not nx.is_connected(g) or g.number_of_edges() != g.number_of_nodes():
        raise NotUnicyclic(f"{g.number_of_nodes()} vertices, {g.number_of_edges()} edges")
    order = {v: i for i, v in enumerate(vertices)}
    cycle = _cycle_vertices(g, order)
    if cycle_direction == "reverse":
        cycle = [cycle[0]] + cycle[:0:-1]
    elif cycle_direction != "forward":
        raise ValueError(f"unknown cycle direction {cycle_direction!r}")
    out = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
    rest = g.copy()
    rest.remove_edges_from(out)
    on_cycle = set(cycle)
    for c in cycle:
        for parent, child in nx.bfs_edges(rest, c):
            if child in on_cycle:
                raise NotUnicyclic("pendant trees meet the cycle twice")
            out.append((child, parent))
    return out


# -- components and families ------------------------------------------------


def components(g: ChainDigraph) -> list[ChainDigraph]:
    """Weakly connected components, ordered by their first vertex."""
    order = {v: i for i, v in enumerate(g.vertices)}
    parts = sorted(
        (sorted(c, key=order.__getitem__) for c in nx.connected_components(g.underlying())),
        key=lambda c: order[c[0]],
    )
    out = []
    for part in parts:
        members = set(part)
        out.append(ChainDigraph(tuple(part), tuple(e for e in g.edges if e.tail in members)))
    return out


@dataclass(frozen=True)
class F1:
    """Two leaves-to-root trees with even chain values."""

    root_a: str
    root_b: str
    name = "F1"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class F2:
    """A centripetal unicyclic digraph with even chain values."""

    cycle: tuple[str, ...]
    name = "F2"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class F3:
    """A leaves-to-root tree, even except one odd edge into the root."""

    root: str
    odd_edge: Edge
    name = "F3"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Union:
    parts: tuple
    name = "Union"

    def __str__(self) -> str:
        return "Union(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class NotInFamily:
    reason: str
    detail: str = ""
    name = "NotInFamily"

    def __str__(self) -> str:
        return self.name


def in_family(tag) -> bool:
    return not isinstance(tag, NotInFamily)


def member_tags(tag) -> list:
    """Flatten a family tag into its F1/F2/F3 members."""
    if isinstance(tag, Union):
        return [t for p in tag.parts for t in member_tags(p)]
    if isinstance(tag, NotInFamily):
        return []
    return [tag]


@dataclass(frozen=True)
class _EvenTree:
    root: str


def _classify_component(c: ChainDigraph):
    nv, ne = len(c.vertices), len(c.edges)
    if ne > nv:
        return NotInFamily("EdgeExcess", f"component at {c.vertices[0]} has {ne} edges, {nv} vertices")
    outdeg = c.out_degree()
    odd = [e for e in c.edges if e.kappa % 2]
    if ne == nv - 1:
        roots = [v for v in c.vertices if outdeg[v] == 0]
        if len(roots) != 1 or any(outdeg[v] != 1 for v in c.vertices if v != roots[0]):
            return NotInFamily("NotLeavesToRoot", f"tree at {c.vertices[0]}")
        root = roots[0]
        if not odd:
            return _EvenTree(root)
        if len(odd) > 1:
            return NotInFamily("TooManyOddEdges", f"tree rooted at {root}")
        if odd[0].head != root:
            return NotInFamily("OddEdgeNotIntoRoot", f"tree rooted at {root}")
        return F3(root, odd[0])
    # ne == nv: one cycle
    if any(d != 1 for d in outdeg.values()):
        return NotInFamily("NotCentripetal", f"unicyclic component at {c.vertices[0]}")
    if odd:
        return NotInFamily("OddKappaOnCycleComponent", f"unicyclic component at {c.vertices[0]}")
    cycle = _cycle_vertices(c.underlying(), {v: i for i, v in enumerate(c.vertices)})
    succ = {e.tail: e.head for e in c.edges}
    # report the cycle in its directed order
    directed = [cycle[0]]
    while len(directed) < len(cycle):
        directed.append(succ[directed[-1]])
    return F2(tuple(directed))


def classify(g: ChainDigraph):
    """Family tag of a validated chain digraph.

    Components are tested one by one; even trees are paired into F1 members
    in component order.
    """
    parts: list = []
    pending: int | None = None
    for c in components(g):
        tag = _classify_component(c)
        if isinstance(tag, NotInFamily):
            return tag
        if isinstance(tag, _EvenTree):
            if pending is None:
                pending = len(parts)
                parts.append(tag)
            else:
                parts[pending] = F1(parts[pending].root, tag.root)
                pending = None
        else:
            parts.append(tag)
    if pending is not None:
        return NotInFamily("UnpairedTree", f"tree rooted at {parts[pending].root}")
    if not parts:
        return Union(())
    if len(parts) == 1:
        return parts[0]
    return Union(tuple(parts))


# -- export ------------------------------------------------------------------


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: ChainDigraph) -> str:
    """Graphviz source: filled vertices, each edge labelled with its kappa
    and decorated with ``kappa - 2`` hollow chain nodes on a dotted path."""
    lines = [
        "digraph chain {",
        "  node [shape=circle, style=filled, fillcolor=black, label=\"\", width=0.12];",
    ]
    for v in g.vertices:
        lines.append(f"  {_dot_id(v)} [xlabel={_dot_id(v)}];")
    for n, e in enumerate(g.edges):
        lines.append(f"  {_dot_id(e.tail)} -> {_dot_id(e.head)} [label=\"{e.kappa}\"];")
        over = [f"e{n}_o{i}" for i in range(1, e.kappa - 1)]
        for o in over:
            lines.append(f"  {o} [style=\"\", fillcolor=white, width=0.08];")
        chain = [e.tail] + over
        for a, b in zip(chain, chain[1:]):
            a_id = _dot_id(a) if a == e.tail else a
            lines.append(f"  {a_id} -> {b} [style=dotted, arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
