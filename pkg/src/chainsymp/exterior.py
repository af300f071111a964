"""Alternating forms over a finite ordered basis, with exact coefficients.

A p-form on a D-dimensional space is stored as a map from strictly
increasing p-tuples of basis indices to nonzero rationals; the key
``(a, b)`` with coefficient ``c`` stands for ``c * x_a^* ^ x_b^*``.
Evaluation follows the determinant convention,
``(alpha ^ beta)(x, y) = alpha(x) beta(y) - alpha(y) beta(x)``, so the Gram
matrix of a 2-form has entry ``+c`` at ``(a, b)`` and ``-c`` at ``(b, a)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Tuple

from chainsymp import linalg

Key = Tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


def sort_sign(indices: Iterable[int]) -> tuple[int, Key]:
    """Sign of the permutation sorting ``indices``, and the sorted tuple.

    The sign is 0 when an index repeats.
    """
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class Form:
    """An alternating form of fixed degree on a ``dim``-dimensional space.

    Instances are immutable; arithmetic returns new forms.
    """

    __slots__ = ("dim", "degree", "_terms")

    def __init__(self, dim: int, degree: int, terms: Mapping[Key, object] = ()):
        if degree < 0:
            raise ValueError(f"negative degree {degree}")
        # degree > dim is allowed: that space is zero and every term vanishes
        clean: dict[Key, Fraction] = {}
        for key, c in dict(terms).items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError(f"term {key} has wrong length for degree {degree}")
            if any(not 0 <= i < dim for i in key):
                raise ValueError(f"index out of range in {key}")
            sign, skey = sort_sign(key)
            if sign == 0:
                continue
            s = clean.get(skey, 0) + sign * Fraction(c)
            if s:
                clean[skey] = s
            else:
                clean.pop(skey, None)
        self.dim = dim
        self.degree = degree
        self._terms = MappingProxyType(clean)

    @classmethod
    def dual(cls, dim: int, index: int) -> "Form":
        """The dual basis 1-form ``x_index^*``."""
        return cls(dim, 1, {(index,): 1})

    @classmethod
    def zero(cls, dim: int, degree: int) -> "Form":
        return cls(dim, degree)

    @property
    def terms(self) -> Mapping[Key, Fraction]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.degree == other.degree
            and dict(self._terms) == dict(other._terms)
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.degree, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"Form(dim={self.dim}, degree={self.degree}, 0)"
        parts = []
        for key in sorted(self._terms):
            c = self._terms[key]
            parts.append(f"{c}*" + "^".join(f"x{i}" for i in key))
        return f"Form(dim={self.dim}, {' + '.join(parts)})"

    def _check(self, other: "Form") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"forms on dimensions {self.dim} and {other.dim}")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return Form(self.dim, self.degree, terms)

    def __neg__(self) -> "Form":
        return Form(self.dim, self.degree, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __rmul__(self, scalar: object) -> "Form":
        s = Fraction(scalar)
        return Form(self.dim, self.degree, {k: s * c for k, c in self._terms.items()})

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def coefficient(self, *indices: int) -> Fraction:
        """Coefficient at an arbitrary index tuple, with the sorting sign."""
        sign, key = sort_sign(indices)
        return sign * self._terms.get(key, Fraction(0))

    def support(self) -> set[int]:
        return {i for key in self._terms for i in key}


def wedge(a: Form, b: Form) -> Form:
    """Exterior product ``a ^ b``."""
    a._check(b)
    if a.degree + b.degree > a.dim:
        raise ValueError(f"degree {a.degree + b.degree} exceeds dimension {a.dim}")
    out: dict[Key, Fraction] = {}
    for ka, ca in a.terms.items():
        sa = set(ka)
        for kb, cb in b.terms.items():
            if sa.intersection(kb):
                continue
            sign, key = sort_sign(ka + kb)
            s = out.get(key, 0) + sign * ca * cb
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Form(a.dim, a.degree + b.degree, out)


def power(w: Form, n: int) -> Form:
    """The n-fold wedge power of ``w`` (``n >= 1``)."""
    if n < 1:
        raise ValueError("power needs n >= 1")
    out = w
    for _ in range(n - 1):
        out = wedge(out, w)
    return out


def top_power_nonzero(w: Form, n: int | None = None) -> bool:
    """Whether the ``n``-th wedge power of a 2-form is nonzero, ``dim == 2n``."""
    if w.degree != 2:
        raise ValueError("top_power_nonzero needs a 2-form")
    if w.dim % 2:
        raise ValueError(f"odd dimension {w.dim}")
    if n is None:
        n = w.dim // 2
    if 2 * n != w.dim:
        raise ValueError(f"half-dimension {n} does not match dimension {w.dim}")
    if n == 0:
        return True
    if len(w.support()) < w.dim:
        # every term of w^n would miss some basis index
        return False
    return bool(power(w, n))


def gram_matrix(w: Form) -> linalg.Matrix:
    """Skew matrix ``M[s][t] = w(x_s, x_t)``."""
    if w.degree != 2:
        raise ValueError("gram_matrix needs a 2-form")
    m = linalg.zeros(w.dim, w.dim)
    for (s, t), c in w.terms.items():
        m[s][t] = c
        m[t][s] = -c
    return m


def gram_determinant(w: Form) -> Fraction:
    return linalg.determinant(gram_matrix(w))


def gram_determinant_nonzero(w: Form) -> bool:
    if w.dim % 2:
        raise ValueError(f"odd dimension {w.dim}")
    return gram_determinant(w) != 0


def top_power_coefficient(w: Form) -> Fraction:
    """Coefficient ``c`` in ``w^n = c * x_0^* ^ ... ^ x_{2n-1}^*``."""
    n = w.dim // 2
    if n == 0:
        return Fraction(1)
    return power(w, n).terms.get(tuple(range(w.dim)), Fraction(0))


def matching_top_power(coefficients: Iterable[Fraction]) -> Fraction:
    """``n! * prod(a_k)``: the magnitude of ``w^n`` for a matching form."""
    cs = list(coefficients)
    out = Fraction(math.factorial(len(cs)))
    for c in cs:
        out *= c
    return out
