"""Free nilpotent Lie algebras over the Lyndon basis, and the quotients
``g(k,G) = L_(k)(m) / I`` and ``g(kappa,G) = g(k,G) / I_kappa`` computed by
exact linear algebra.

Words are tuples of 0-based generator indices. Lie polynomials live in the
truncated tensor algebra as ``dict[word, Fraction]``. Every Lyndon word
``w`` has a standard bracketing ``P_w = w + (lexicographically larger words)``,
which makes rewriting a Lie polynomial in the Lyndon basis triangular.

This module is deliberately independent of :mod:`chainsymp.chain`; it is the
reference the direct construction is certified against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from chainsymp import linalg
from chainsymp.linalg import RowSpace, SparseVec
from chainsymp.lie import LieAlgebra

Word = Tuple[int, ...]
LiePoly = Dict[Word, Fraction]


class NotLyndon(ValueError):
    pass


class NonLieResidual(ArithmeticError):
    """A polynomial that should be a Lie element did not decompose."""


class IdealNotClosed(AssertionError):
    pass


class DimensionMismatch(AssertionError):
    pass


class OracleTooLarge(ValueError):
    pass


# -- words --------------------------------------------------------------------


def lyndon_words(m: int, k: int) -> List[Word]:
    """All Lyndon words of length <= k on ``m`` letters, in lexicographic
    order (Duval's generation)."""
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    out: List[Word] = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        n = len(w)
        while len(w) < k:
            w.append(w[len(w) - n])
        while w and w[-1] == m - 1:
            w.pop()
    return out


def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def multidegree(w: Sequence[int], m: int) -> Tuple[int, ...]:
    counts = [0] * m
    for a in w:
        counts[a] += 1
    return tuple(counts)


def witt_dimension(m: int, n: int) -> int:
    """Number of Lyndon words of length ``n`` on ``m`` letters."""

    def mobius(d: int) -> int:
        result, p = 1, 2
        while p * p <= d:
            if d % p == 0:
                d //= p
                if d % p == 0:
                    return 0
                result = -result
            p += 1
        return -result if d > 1 else result

    return sum(mobius(d) * m ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def standard_factorization(w: Word) -> Tuple[Word, Word]:
    """``w = u v`` with ``v`` the longest proper Lyndon suffix."""
    if len(w) < 2 or not is_lyndon(w):
        raise NotLyndon(w)
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise NotLyndon(w)  # pragma: no cover


# -- tensor algebra -----------------------------------------------------------


def commutator(p: LiePoly, q: LiePoly, k: Optional[int] = None) -> LiePoly:
    """``pq - qp``, dropping words longer than ``k``."""
    out: LiePoly = {}
    for a, ca in p.items():
        for b, cb in q.items():
            if k is not None and len(a) + len(b) > k:
                continue
            c = ca * cb
            for word, sign in ((a + b, c), (b + a, -c)):
                s = out.get(word, 0) + sign
                if s:
                    out[word] = s
                else:
                    out.pop(word, None)
    return out


@lru_cache(maxsize=None)
def _bracketing(w: Word) -> Tuple[Tuple[Word, Fraction], ...]:
    if len(w) == 1:
        return ((w, Fraction(1)),)
    u, v = standard_factorization(w)
    return tuple(sorted(commutator(standard_bracketing(u), standard_bracketing(v)).items()))


def standard_bracketing(w: Sequence[int]) -> LiePoly:
    w = tuple(w)
    if not is_lyndon(w):
        raise NotLyndon(w)
    return dict(_bracketing(w))


def bracket_string(w: Word) -> str:
    """The standard bracketing of ``w`` written with 1-based vertex names."""
    if len(w) == 1:
        return f"v{w[0] + 1}"
    u, v = standard_factorization(w)
    return f"[{bracket_string(u)},{bracket_string(v)}]"


def decompose(p: LiePoly) -> Dict[Word, Fraction]:
    """Coefficients of a Lie polynomial over the Lyndon bracket basis."""
    rest = {w: Fraction(c) for w, c in p.items() if c}
    out: Dict[Word, Fraction] = {}
    while rest:
        n = min(len(w) for w in rest)
        lead = min(w for w in rest if len(w) == n)
        if not is_lyndon(lead):
            raise NonLieResidual(f"leading word {lead} is not Lyndon")
        c = rest[lead]
        out[lead] = out.get(lead, 0) + c
        for word, d in _bracketing(lead):
            s = rest.get(word, 0) - c * d
            if s:
                rest[word] = s
            else:
                rest.pop(word, None)
    return out


# -- free nilpotent algebra ----------------------------------------------------


class FreeNilpotent(LieAlgebra):
    """The free k-step nilpotent Lie algebra on ``m`` generators, with the
    Lyndon words sorted by (length, lexicographic) as basis."""

    def __init__(self, m: int, k: int):
        if m < 1 or k < 2:
            raise ValueError("need m >= 1 and k >= 2")
        words = sorted(lyndon_words(m, k), key=lambda w: (len(w), w))
        index = {w: n for n, w in enumerate(words)}
        brackets = {}
        for s, t in itertools.combinations(range(len(words)), 2):
            a, b = words[s], words[t]
            if len(a) + len(b) > k:
                continue
            coeffs = decompose(commutator(standard_bracketing(a), standard_bracketing(b), k))
            vec = {index[w]: c for w, c in coeffs.items() if c}
            if vec:
                brackets[(s, t)] = vec
        super().__init__([bracket_string(w) for w in words], [len(w) for w in words], brackets)
        self.m = m
        self.k = k
        self.words: Tuple[Word, ...] = tuple(words)
        self.index: Dict[Word, int] = index
        self.multidegrees = tuple(multidegree(w, m) for w in words)

    def generator(self, i: int) -> SparseVec:
        return {self.index[(i,)]: Fraction(1)}

    def graded_dims(self) -> List[int]:
        return self.layer_sizes()


@lru_cache(maxsize=None)
def free_nilpotent(m: int, k: int) -> FreeNilpotent:
    return FreeNilpotent(m, k)


# -- graph quotient -------------------------------------------------------------


class GraphQuotient:
    """``L_(k)(m) / I`` with ``I`` generated by the non-edge commutators.

    ``I`` is built degree by degree: ``I_2`` is spanned by the non-edge
    brackets and ``I_{d+1} = [L_1, I_d]``. The quotient basis is the set of
    Lyndon elements that are not echelon pivots of ``I``; pivots are taken at
    the lexicographically largest word, so representatives are lex-least.
    """

    def __init__(self, m: int, edges: Iterable[Tuple[int, int]], k: int):
        self.m = m
        self.k = k
        self.edges: FrozenSet[FrozenSet[int]] = frozenset(frozenset(e) for e in edges)
        self.free = free_nilpotent(m, k)
        L = self.free
        self.ideal = RowSpace()
        layer = RowSpace(
            {L.index[(i, j)]: Fraction(1)}
            for i, j in itertools.combinations(range(m), 2)
            if frozenset((i, j)) not in self.edges
        )
        for _ in range(2, k + 1):
            for row in layer.basis():
                self.ideal.add(row)
            nxt = RowSpace()
            for row in layer.basis():
                for i in range(m):
                    z = L.bracket(L.generator(i), row)
                    if z:
                        nxt.add(z)
            layer = nxt
        pivots = self.ideal.pivots
        self.basis: Tuple[int, ...] = tuple(n for n in range(L.dim) if n not in pivots)
        self._q = {n: q for q, n in enumerate(self.basis)}
        brackets = {}
        for s, t in itertools.combinations(range(len(self.basis)), 2):
            z = self.project(L.bracket_basis(self.basis[s], self.basis[t]))
            if z:
                brackets[(s, t)] = z
        self.algebra = LieAlgebra(
            [L.labels[n] for n in self.basis], [L.layers[n] for n in self.basis], brackets
        )
        self.multidegrees = tuple(L.multidegrees[n] for n in self.basis)

    def project(self, vec: SparseVec) -> SparseVec:
        """Free-algebra vector to quotient coordinates."""
        r = self.ideal.reduce(vec)
        return {self._q[n]: c for n, c in r.items()}

    def generator(self, i: int) -> int:
        return self._q[self.free.index[(i,)]]

    def graded_dims(self) -> List[int]:
        return [sum(1 for n in self.basis if self.free.layers[n] == d) for d in range(1, self.k + 1)]

    def block(self, md: Sequence[int]) -> List[int]:
        md = tuple(md)
        return [q for q, d in enumerate(self.multidegrees) if d == md]


@lru_cache(maxsize=256)
def _graph_quotient(m: int, edges: FrozenSet[FrozenSet[int]], k: int) -> GraphQuotient:
    return GraphQuotient(m, [tuple(e) for e in edges], k)


def graph_quotient(m: int, edges: Iterable[Sequence[int]], k: int) -> GraphQuotient:
    """Cached :class:`GraphQuotient` for the graph on ``range(m)``."""
    if k < 2:
        raise ValueError("need k >= 2")
    return _graph_quotient(m, frozenset(frozenset(e) for e in edges), k)


# -- chain quotient and certification ------------------------------------------


def left_normed(L: FreeNilpotent, i: int, j: int, l: int) -> SparseVec:
    """``[[...[v_i, v_j], v_j], ..., v_j]`` with ``l - 1`` copies of ``v_j``."""
    w = L.generator(i)
    for _ in range(l - 1):
        w = L.bracket(w, L.generator(j))
    return w


def right_normed(L: FreeNilpotent, j: int, i: int, l: int) -> SparseVec:
    """``[v_j, [v_j, ... [v_j, v_i]...]]`` with ``l - 1`` copies of ``v_j``."""
    w = L.generator(i)
    for _ in range(l - 1):
        w = L.bracket(L.generator(j), w)
    return w


def _closed(coords: set, alg: LieAlgebra) -> Optional[Tuple[int, int]]:
    for (s, t), vec in alg.nonzero_brackets().items():
        if (s in coords or t in coords) and not coords.issuperset(vec):
            return (s, t)
    return None


@dataclass
class KappaQuotient:
    """``g(kappa,G) = g(k,G) / I_kappa`` together with the comparison data.

    ``chain_images`` maps each (edge index, l) to the class of ``w^l`` in
    graph-quotient coordinates; ``ideal`` holds the graph-quotient
    coordinates spanning ``I_kappa``; ``algebra`` is the final quotient on
    the surviving coordinates ``kept``.
    """

    graph_quotient: GraphQuotient
    chain_images: Dict[Tuple[int, int], SparseVec]
    edge_ideals: List[FrozenSet[int]]
    ideal: FrozenSet[int]
    kept: Tuple[int, ...]
    algebra: LieAlgebra
    generated_ideal_dim: int = 0
    generated_ideal_agrees: bool = False

    def restrict(self, vec: SparseVec) -> SparseVec:
        pos = {q: n for n, q in enumerate(self.kept)}
        return {pos[q]: c for q, c in vec.items() if q in pos}


def kappa_quotient(g) -> KappaQuotient:
    """Realize ``I^kappa_{i,j}`` and ``I_kappa`` inside the graph quotient.

    Every ``I^kappa_{i,j}`` is the span of the adapted basis with ``v_j``,
    ``v_i`` and ``w^l_{i,j}`` (``l <= kappa_{i,j}``) removed. The chain
    elements sit alone in their multidegree blocks, so in quotient
    coordinates each of these spans is a coordinate subspace; the
    intersection is then a set intersection. Each span is checked to be
    bracket-closed.
    """
    from chainsymp.graph import validate

    validate(g)
    m = len(g.vertices)
    k = max(g.k, 2)
    ends = [(g.index(e.tail), g.index(e.head)) for e in g.edges]
    Q = graph_quotient(m, ends, k)
    L = Q.free
    images: Dict[Tuple[int, int], SparseVec] = {}
    chain_coord: Dict[Tuple[int, int], int] = {}
    for n, (i, j) in enumerate(ends):
        for l in range(2, k + 1):
            md = [0] * m
            md[i], md[j] = 1, l - 1
            block = Q.block(md)
            if len(block) != 1:
                raise DimensionMismatch(
                    f"multidegree {tuple(md)} has {len(block)} basis elements, expected 1"
                )
            img = Q.project(left_normed(L, i, j, l))
            if set(img) != set(block):
                raise DimensionMismatch(f"w^{l} of edge {n} is not a nonzero element of its block")
            images[(n, l)] = img
            chain_coord[(n, l)] = block[0]
    all_coords = set(range(Q.algebra.dim))
    edge_ideals = []
    for n, (i, j) in enumerate(ends):
        excluded = {Q.generator(i), Q.generator(j)}
        excluded.update(chain_coord[(n, l)] for l in range(2, g.edges[n].kappa + 1))
        coords = all_coords - excluded
        bad = _closed(coords, Q.algebra)
        if bad is not None:
            raise IdealNotClosed(f"I^kappa for edge {n} not closed at bracket {bad}")
        edge_ideals.append(frozenset(coords))
    ideal = set(q for q in all_coords if Q.algebra.layers[q] >= 3)
    for coords in edge_ideals:
        ideal &= coords
    bad = _closed(ideal, Q.algebra)
    if bad is not None:
        raise IdealNotClosed(f"I_kappa not closed at bracket {bad}")
    kept = tuple(q for q in range(Q.algebra.dim) if q not in ideal)
    pos = {q: n for n, q in enumerate(kept)}
    brackets = {}
    for (s, t), vec in Q.algebra.nonzero_brackets().items():
        if s in pos and t in pos:
            z = {pos[q]: c for q, c in vec.items() if q in pos}
            if z:
                brackets[(pos[s], pos[t])] = z
    algebra = LieAlgebra(
        [Q.algebra.labels[q] for q in kept], [Q.algebra.layers[q] for q in kept], brackets
    )
    gen = generated_ideal(Q, [images[(n, e.kappa + 1)] for n, e in enumerate(g.edges) if e.kappa < k])
    agrees = gen.dim == len(ideal) and all(set(row) <= ideal for row in gen.basis())
    return KappaQuotient(Q, images, edge_ideals, frozenset(ideal), kept, algebra, gen.dim, agrees)


def generated_ideal(Q: GraphQuotient, generators: Iterable[SparseVec]) -> RowSpace:
    """Ideal of the graph quotient generated by ``generators``."""
    span = RowSpace()
    frontier = [g for g in generators if g]
    gens = [{Q.generator(i): Fraction(1)} for i in range(Q.m)]
    while frontier:
        new = []
        for v in frontier:
            if span.add(v):
                new.append(v)
        frontier = [z for v in new for x in gens if (z := Q.algebra.bracket(x, v))]
    return span


@dataclass
class Certificate:
    ok: bool
    free_dims: List[int]
    graph_quotient_dims: List[int]
    kappa_quotient_dims: List[int]
    chain_dims: List[int]
    generated_ideal_agrees: bool
    mismatch: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "verdict": "ok" if self.ok else "discrepancy",
            "free_dims": self.free_dims,
            "graph_quotient_dims": self.graph_quotient_dims,
            "kappa_quotient_dims": self.kappa_quotient_dims,
            "chain_dims": self.chain_dims,
            "generated_ideal_agrees": self.generated_ideal_agrees,
            "mismatch": self.mismatch,
        }


def certify_equivalence(g, max_vertices: int = 4, max_k: int = 4) -> Certificate:
    """Check that the direct construction of ``g(kappa,G)`` is isomorphic to
    the quotient via ``v_i -> v_i`` and ``w^l_{i,j} -> [...[v_i,v_j],...,v_j]``.

    Pass ``max_vertices=None`` / ``max_k=None`` to lift the size guard.
    """
    from chainsymp.chain import Chain, Vertex, build

    m = len(g.vertices)
    k = max(g.k, 2)
    if (max_vertices is not None and m > max_vertices) or (max_k is not None and k > max_k):
        raise OracleTooLarge(f"m={m}, k={k} exceeds the oracle limit ({max_vertices}, {max_k})")
    chain = build(g)
    kq = kappa_quotient(g)
    Q = kq.graph_quotient
    target = kq.algebra

    def dims(layers, top):
        return [sum(1 for x in layers if x == d) for d in range(1, top + 1)]

    cert = Certificate(
        ok=False,
        free_dims=Q.free.graded_dims(),
        graph_quotient_dims=Q.graded_dims(),
        kappa_quotient_dims=dims(target.layers, k),
        chain_dims=dims(chain.layers, k),
        generated_ideal_agrees=kq.generated_ideal_agrees,
    )
    if chain.dim != target.dim:
        cert.mismatch = f"dimension {chain.dim} vs quotient {target.dim}"
        return cert
    edge_no = {(g.index(e.tail), g.index(e.head)): n for n, e in enumerate(g.edges)}
    phi: List[SparseVec] = []
    for label in chain.basis:
        if isinstance(label, Vertex):
            phi.append(kq.restrict({Q.generator(label.i): Fraction(1)}))
        else:
            assert isinstance(label, Chain)
            phi.append(kq.restrict(kq.chain_images[(edge_no[(label.i, label.j)], label.l)]))
    if linalg.span_rank(phi) != chain.dim:
        cert.mismatch = "comparison map is not injective"
        return cert

    def image(vec: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for r, c in vec.items():
            linalg.axpy(out, c, phi[r])
        return out

    for s, t in itertools.combinations(range(chain.dim), 2):
        lhs = image(chain.bracket_basis(s, t))
        rhs = target.bracket(phi[s], phi[t])
        if lhs != rhs:
            cert.mismatch = f"[{chain.labels[s]}, {chain.labels[t]}]: {lhs} vs {rhs}"
            return cert
    cert.ok = True
    return cert
