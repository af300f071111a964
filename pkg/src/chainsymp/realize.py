"""Symplectic chain digraphs of a prescribed nilpotency type.

Given ``(a_1, ..., a_k, 0)``, one edge with ``kappa = l`` is made for each
unit of ``a_l - a_{l+1}``. Odd edges each open an A-box, ``T = a_1 - a_2 - S``
single vertices open B-boxes, and even edges are distributed among the
boxes and a final C-box. A-boxes become stars rooted at the odd edge's head,
B-boxes become stars on their vertex, and C becomes one directed cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from chainsymp.chain import build
from chainsymp.graph import ChainDigraph, Edge, classify, in_family


class Infeasible(ValueError):
    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


def normalize_type(dims: Sequence[int]) -> Tuple[int, ...]:
    """Drop trailing zeros and append exactly one."""
    dims = [int(a) for a in dims]
    if any(a < 0 for a in dims):
        raise Infeasible("NonMonotone", "negative entry")
    while dims and dims[-1] == 0:
        dims.pop()
    return tuple(dims) + (0,)


def parse_type(text: str) -> Tuple[int, ...]:
    try:
        return normalize_type(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        if isinstance(exc, Infeasible):
            raise
        raise ValueError(f"malformed type {text!r}") from None


def s_value(t: Sequence[int]) -> int:
    """``sum(a_i, odd i >= 3) - sum(a_i, even i >= 4)`` (1-based ``i``)."""
    return sum(a if i % 2 else -a for i, a in enumerate(t, start=1) if i >= 3)


def edge_pool(t: Sequence[int]) -> Dict[int, int]:
    """Multiplicity ``a_l - a_{l+1}`` of every chain value ``l >= 2``."""
    a = list(normalize_type(t))
    return {l: a[l - 1] - a[l] for l in range(2, len(a)) if a[l - 1] - a[l]}


def feasibility(t: Sequence[int]) -> Tuple[int, int]:
    """Return ``(S, T)`` for a realizable type or raise :class:`Infeasible`."""
    a = normalize_type(t)
    body = a[:-1]
    if any(body[i] < body[i + 1] for i in range(len(body) - 1)) or any(x <= 0 for x in body):
        raise Infeasible("NonMonotone", str(a))
    if sum(body) % 2:
        raise Infeasible("OddTotal", str(a))
    S = s_value(a)
    a1 = body[0] if body else 0
    a2 = body[1] if len(body) > 1 else 0
    if a1 - a2 < S:
        raise Infeasible("SBound", f"a1 - a2 = {a1 - a2} < S = {S}")
    T = a1 - a2 - S
    even = a2 - S
    if S == 0 and T == 0 and 0 < even < 3:
        raise Infeasible("CBoxImpossible", f"{even} even edges cannot form a unicyclic graph")
    return S, T


@dataclass(frozen=True)
class RealizationPlan:
    S: int
    T: int
    pool: Dict[int, int]
    a_boxes: Tuple[Tuple[int, ...], ...]  # first entry is the odd edge
    b_boxes: Tuple[Tuple[int, ...], ...]
    c_box: Tuple[int, ...]

    def check(self) -> None:
        assert all(box and box[0] % 2 and all(k % 2 == 0 for k in box[1:]) for box in self.a_boxes)
        assert all(k % 2 == 0 for box in self.b_boxes for k in box)
        assert all(k % 2 == 0 for k in self.c_box)
        assert len(self.c_box) == 0 or len(self.c_box) >= 3
        assert self.T % 2 == 0 and len(self.b_boxes) == self.T


def plan(t: Sequence[int]) -> RealizationPlan:
    """Deterministic box assignment: odd edges in descending kappa open the
    A-boxes; all even edges (descending) go to A_1, else B_1, else C."""
    S, T = feasibility(t)
    pool = edge_pool(t)
    odd = sorted((k for k, c in pool.items() if k % 2 for _ in range(c)), reverse=True)
    even = tuple(sorted((k for k, c in pool.items() if k % 2 == 0 for _ in range(c)), reverse=True))
    a_boxes = [(k,) for k in odd]
    b_boxes: List[Tuple[int, ...]] = [() for _ in range(T)]
    c_box: Tuple[int, ...] = ()
    if a_boxes:
        a_boxes[0] = a_boxes[0] + even
    elif b_boxes:
        b_boxes[0] = even
    else:
        c_box = even
    p = RealizationPlan(S, T, pool, tuple(a_boxes), tuple(b_boxes), c_box)
    p.check()
    return p


def realize(t: Sequence[int]) -> ChainDigraph:
    p = plan(t)
    vertices: List[str] = []
    edges: List[Edge] = []
    for n, box in enumerate(p.a_boxes, start=1):
        root = f"a{n}_root"
        vertices.append(root)
        for r, kappa in enumerate(box, start=1):
            leaf = f"a{n}_leaf{r}"
            vertices.append(leaf)
            edges.append(Edge(leaf, root, kappa))
    for n, box in enumerate(p.b_boxes, start=1):
        root = f"b{n}"
        vertices.append(root)
        for r, kappa in enumerate(box, start=1):
            leaf = f"b{n}_leaf{r}"
            vertices.append(leaf)
            edges.append(Edge(leaf, root, kappa))
    cycle = [f"c{r}" for r in range(1, len(p.c_box) + 1)]
    vertices.extend(cycle)
    for r, kappa in enumerate(p.c_box):
        edges.append(Edge(cycle[r], cycle[(r + 1) % len(cycle)], kappa))
    return ChainDigraph(tuple(vertices), tuple(edges))


@dataclass
class RoundtripResult:
    ok: bool
    target: Tuple[int, ...]
    realized_type: List[int]
    family: str
    symplectic: bool
    detail: Optional[str] = None


def roundtrip(t: Sequence[int]) -> RoundtripResult:
    """Realize ``t``, rebuild the algebra, and re-derive type and verdict."""
    from chainsymp.symplectic import verify

    target = normalize_type(t)
    g = realize(target)
    got = build(g).nilpotency_type()
    report = verify(g)
    tag = classify(g)
    ok = tuple(got) == target and report.symplectic and in_family(tag)
    detail = None
    if not ok:
        detail = f"target {list(target)}, realized {got}, verdict {report.verdict}, family {tag}"
    return RoundtripResult(ok, target, got, str(tag), report.symplectic, detail)
