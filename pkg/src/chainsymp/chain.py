"""Direct construction of the Lie algebra of a chain digraph.

The standard basis is ``v_1, ..., v_m`` followed by the chain elements
``w^l_{i,j}`` (``2 <= l <= kappa_{i,j}``) of every edge ``(v_i, v_j)``, sorted
by ``(l, i, j)``. The only nonzero basis brackets are
``[w^l_{i,j}, v_j] = w^{l+1}_{i,j}`` with ``w^1_{i,j} = v_i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from chainsymp.graph import ChainDigraph, Edge, validate
from chainsymp.lie import LieAlgebra


@dataclass(frozen=True, order=True)
class Vertex:
    i: int  # 0-based vertex position

    @property
    def layer(self) -> int:
        return 1

    def __str__(self) -> str:
        return f"v{self.i + 1}"


@dataclass(frozen=True, order=True)
class Chain:
    i: int
    j: int
    l: int

    def __post_init__(self):
        if self.l < 2:
            raise ValueError("chain elements start at l = 2; w^1_{i,j} is the vertex v_i")

    @property
    def layer(self) -> int:
        return self.l

    def __str__(self) -> str:
        return f"w[{self.i + 1},{self.j + 1}]^{self.l}"


BasisLabel = Union[Vertex, Chain]

_LABEL = re.compile(r"^(?:v(\d+)|w\[(\d+),(\d+)\]\^(\d+))$")


def parse_label(text: str) -> BasisLabel:
    m = _LABEL.match(text)
    if not m:
        raise ValueError(f"not a basis label: {text!r}")
    if m.group(1):
        return Vertex(int(m.group(1)) - 1)
    return Chain(int(m.group(2)) - 1, int(m.group(3)) - 1, int(m.group(4)))


class ChainLieAlgebra(LieAlgebra):
    """The algebra of a chain digraph, with lookups by basis label."""

    def __init__(self, graph: ChainDigraph, basis: Sequence[BasisLabel], brackets):
        super().__init__([str(b) for b in basis], [b.layer for b in basis], brackets)
        self.graph = graph
        self.basis: Tuple[BasisLabel, ...] = tuple(basis)
        self._position: Dict[BasisLabel, int] = {b: n for n, b in enumerate(self.basis)}

    def position(self, label: BasisLabel) -> int:
        return self._position[label]

    def w(self, edge: Edge, l: int) -> int:
        """Basis position of ``w^l`` for ``edge``; ``l = 1`` gives the tail."""
        i, j = self.graph.index(edge.tail), self.graph.index(edge.head)
        if not 1 <= l <= edge.kappa:
            raise ValueError(f"l = {l} outside 1..{edge.kappa}")
        if l == 1:
            return self._position[Vertex(i)]
        return self._position[Chain(i, j, l)]

    def vertex(self, name: str) -> int:
        return self._position[Vertex(self.graph.index(name))]

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["graph"] = self.graph.to_dict()
        return out


def standard_basis(g: ChainDigraph) -> List[BasisLabel]:
    chains = []
    for e in g.edges:
        i, j = g.index(e.tail), g.index(e.head)
        chains.extend(Chain(i, j, l) for l in range(2, e.kappa + 1))
    chains.sort(key=lambda c: (c.l, c.i, c.j))
    return [Vertex(i) for i in range(len(g.vertices))] + chains


def build(g: ChainDigraph) -> ChainLieAlgebra:
    validate(g)
    basis = standard_basis(g)
    pos = {b: n for n, b in enumerate(basis)}
    brackets = {}
    for e in g.edges:
        i, j = g.index(e.tail), g.index(e.head)
        prev = pos[Vertex(i)]
        vj = pos[Vertex(j)]
        for l in range(2, e.kappa + 1):
            cur = pos[Chain(i, j, l)]
            brackets[(prev, vj)] = {cur: Fraction(1)}
            prev = cur
    return ChainLieAlgebra(g, basis, brackets)


def expected_dimension(g: ChainDigraph) -> int:
    return len(g.vertices) + sum(e.kappa - 1 for e in g.edges)


def type_from_kappa(g: ChainDigraph) -> List[int]:
    """Nilpotency type from edge counts: ``a_1 = |V|`` and
    ``a_l - a_{l+1} = #{e : kappa_e = l}`` for ``l >= 2``."""
    if not g.edges:
        return [len(g.vertices), 0] if g.vertices else [0]
    k = g.k
    a = [0] * (k + 2)
    for l in range(k, 1, -1):
        a[l] = a[l + 1] + sum(1 for e in g.edges if e.kappa == l)
    a[1] = len(g.vertices)
    return a[1:k + 1] + [0]


# -- almost abelian ---------------------------------------------------------


@dataclass(frozen=True)
class JordanSpec:
    """Nilpotent Jordan data: ``p_i`` copies of a block of size ``n_i`` plus
    ``t`` one-dimensional zero blocks."""

    blocks: Tuple[Tuple[int, int], ...]
    t: int = 0

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((int(n), int(p)) for n, p in self.blocks))
        if any(n < 1 or p < 1 for n, p in self.blocks):
            raise ValueError("block sizes and multiplicities must be positive")
        if self.t < 0:
            raise ValueError("t must be nonnegative")


def almost_abelian_to_chain(spec: JordanSpec) -> ChainDigraph:
    """Star digraph: every block replica is a leaf pointing into one hub with
    ``kappa = n + 2``; the ``t`` trivial blocks are isolated vertices.

    Leaves come first (by block, then replica), then the isolated vertices,
    and the hub last. Without blocks there is no hub.
    """
    leaves = []
    edges = []
    for b, (n, p) in enumerate(spec.blocks, start=1):
        for r in range(1, p + 1):
            name = f"x{b}_{r}"
            leaves.append(name)
            edges.append(Edge(name, "hub", n + 2))
    isolated = [f"z{i}" for i in range(1, spec.t + 1)]
    vertices = leaves + isolated + (["hub"] if spec.blocks else [])
    return ChainDigraph(tuple(vertices), tuple(edges))


def almost_abelian_symplectic_sufficient(spec: JordanSpec) -> bool:
    """The sufficient condition for the star algebra to be symplectic: ``t``
    even with exactly one odd chain value, or ``t`` odd with all even."""
    kappas = [n + 2 for n, p in spec.blocks for _ in range(p)]
    odd = sum(1 for k in kappas if k % 2)
    if not kappas:
        return spec.t % 2 == 0
    return (spec.t % 2 == 0 and odd == 1) or (spec.t % 2 == 1 and odd == 0)
