"""Finite-dimensional Lie algebras given by sparse rational structure constants."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from chainsymp import linalg
from chainsymp.linalg import RowSpace, SparseVec

Vector = Union[Mapping[int, Fraction], Sequence[Fraction]]


class DimensionMismatch(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


class LieAlgebra:
    """A Lie algebra on an ordered, labelled basis.

    ``brackets`` maps basis pairs ``(s, t)`` to the sparse vector
    ``[b_s, b_t]``; only pairs with nonzero bracket need to be present and
    either order is accepted (antisymmetry is applied on storage).
    ``layers`` tags every basis element with its grading degree.
    """

    def __init__(
        self,
        labels: Sequence[str],
        layers: Sequence[int],
        brackets: Mapping[Tuple[int, int], Mapping[int, object]],
    ):
        if len(labels) != len(layers):
            raise DimensionMismatch("labels and layers differ in length")
        self.labels: Tuple[str, ...] = tuple(labels)
        self.layers: Tuple[int, ...] = tuple(layers)
        table: Dict[Tuple[int, int], SparseVec] = {}
        n = len(self.labels)
        for (s, t), vec in brackets.items():
            if not (0 <= s < n and 0 <= t < n):
                raise DimensionMismatch(f"bracket index ({s}, {t}) out of range")
            if s == t:
                if any(Fraction(c) for c in vec.values()):
                    raise ValueError(f"[b_{s}, b_{s}] must vanish")
                continue
            v = linalg.sparse(vec.items())
            if s > t:
                s, t = t, s
                v = linalg.scale(Fraction(-1), v)
            if v:
                table[(s, t)] = v
        self._brackets = table
        self._coderivative: Optional[Dict[int, List[Tuple[int, int, Fraction]]]] = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim}, nonzero brackets={len(self._brackets)})"

    def nonzero_brackets(self) -> Dict[Tuple[int, int], SparseVec]:
        """Structure constants for ``s < t`` (a copy)."""
        return {k: dict(v) for k, v in self._brackets.items()}

    def bracket_basis(self, s: int, t: int) -> SparseVec:
        if s == t:
            return {}
        if s < t:
            return dict(self._brackets.get((s, t), {}))
        return linalg.scale(Fraction(-1), self._brackets.get((t, s), {}))

    def _as_sparse(self, v: Vector) -> SparseVec:
        if isinstance(v, Mapping):
            if any(not 0 <= i < self.dim for i in v):
                raise DimensionMismatch("vector index out of range")
            return {i: Fraction(c) for i, c in v.items() if c}
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} on a {self.dim}-dim algebra")
        return {i: Fraction(c) for i, c in enumerate(v) if c}

    def bracket(self, a: Vector, b: Vector) -> SparseVec:
        """Bilinear extension of the structure constants; returns a sparse vector."""
        a, b = self._as_sparse(a), self._as_sparse(b)
        out: SparseVec = {}
        for s, ca in a.items():
            for t, cb in b.items():
                if s == t:
                    continue
                if s < t:
                    vec = self._brackets.get((s, t))
                    c = ca * cb
                else:
                    vec = self._brackets.get((t, s))
                    c = -ca * cb
                if vec:
                    linalg.axpy(out, c, vec)
        return out

    def coderivative(self) -> Dict[int, List[Tuple[int, int, Fraction]]]:
        """For every basis index r, the pairs ``s < t`` with ``[b_s, b_t]``
        having coefficient ``c != 0`` at ``b_r``."""
        if self._coderivative is None:
            table: Dict[int, List[Tuple[int, int, Fraction]]] = {r: [] for r in range(self.dim)}
            for (s, t), vec in self._brackets.items():
                for r, c in vec.items():
                    table[r].append((s, t, c))
            self._coderivative = table
        return self._coderivative

    # -- structure ------------------------------------------------------------

    def lower_central_series(self) -> List[int]:
        """Dimensions of g^1 ⊇ g^2 ⊇ ..., ending with 0."""
        dims = [self.dim]
        current = [{i: Fraction(1)} for i in range(self.dim)]
        while current:
            span = RowSpace()
            for y in current:
                for s in range(self.dim):
                    z = self.bracket({s: Fraction(1)}, y)
                    if z:
                        span.add(z)
            if span.dim >= dims[-1]:
                raise NotNilpotent(f"lower central series stalls at dimension {span.dim}")
            dims.append(span.dim)
            current = span.basis()
        return dims

    def nilpotency_type(self) -> List[int]:
        """``(a_1, ..., a_k, 0)`` with ``a_i = dim g^i / g^{i+1}``."""
        dims = self.lower_central_series()
        return [dims[i] - dims[i + 1] for i in range(len(dims) - 1)] + [0]

    def step(self) -> int:
        return len(self.lower_central_series()) - 1

    def derived_dim(self) -> int:
        return RowSpace(self._brackets.values()).dim

    def derived_codim(self) -> int:
        return self.dim - self.derived_dim()

    def center_dim(self) -> int:
        """Dimension of the kernel of ``x -> ad(x)``."""
        n = self.dim
        rows: List[SparseVec] = [{} for _ in range(n)]
        for (s, t), vec in self._brackets.items():
            # row s gets [b_s, b_t] in block t, row t gets [b_t, b_s] in block s
            for r, c in vec.items():
                rows[s][t * n + r] = c
                rows[t][s * n + r] = -c
        return n - RowSpace(rows).dim

    def structure_matrix(self) -> linalg.Matrix:
        """Dense matrix whose rows are all brackets ``[b_s, b_t]``, ``s < t``."""
        return [linalg.to_dense(self.bracket_basis(s, t), self.dim) for s, t in combinations(range(self.dim), 2)]

    def jacobi_check(self) -> Optional[Tuple[Tuple[int, int, int], SparseVec]]:
        """None if the Jacobi identity holds on all basis triples, else the
        first failing triple and its nonzero cyclic sum.

        Only triples containing a pair with a nonzero bracket can fail; each
        such pair ``s < t`` contributes ``[[b_s, b_t], b_u]`` to the cyclic
        sum of the sorted triple, with the sign of the sorting permutation.
        """
        n = self.dim
        sums: Dict[Tuple[int, int, int], SparseVec] = {}
        for (s, t), vec in self._brackets.items():
            for u in range(n):
                if u == s or u == t:
                    continue
                term: SparseVec = {}
                for r, c in vec.items():
                    if r < u:
                        inner = self._brackets.get((r, u))
                        if inner:
                            linalg.axpy(term, c, inner)
                    elif r > u:
                        inner = self._brackets.get((u, r))
                        if inner:
                            linalg.axpy(term, -c, inner)
                if not term:
                    sums.setdefault(tuple(sorted((s, t, u))), {})
                    continue
                sign = Fraction(-1) if s < u < t else Fraction(1)
                linalg.axpy(sums.setdefault(tuple(sorted((s, t, u))), {}), sign, term)
        for key in sorted(sums):
            if sums[key]:
                return key, sums[key]
        return None

    def is_graded(self) -> bool:
        """Whether ``[layer p, layer q] ⊆ layer p+q`` on basis elements."""
        return all(
            self.layers[r] == self.layers[s] + self.layers[t]
            for (s, t), vec in self._brackets.items()
            for r in vec
        )

    def layer_sizes(self) -> List[int]:
        top = max(self.layers, default=0)
        return [sum(1 for l in self.layers if l == d) for d in range(1, top + 1)]

    def to_dict(self) -> dict:
        return {
            "basis": list(self.labels),
            "layers": {lab: layer for lab, layer in zip(self.labels, self.layers)},
            "brackets": [
                {"a": s, "b": t, "result": [[r, str(c)] for r, c in sorted(vec.items())]}
                for (s, t), vec in sorted(self._brackets.items())
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LieAlgebra":
        labels = list(data["basis"])
        layers = [int(data["layers"][lab]) for lab in labels]
        brackets = {
            (int(b["a"]), int(b["b"])): {int(r): Fraction(c) for r, c in b["result"]}
            for b in data["brackets"]
        }
        return cls(labels, layers, brackets)
