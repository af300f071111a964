"""Closed 2-forms on chain algebras and the symplectic verdict.

The differential follows ``d xi (x, y) = xi([x, y])`` on 1-forms and the
Leibniz rule ``d(a ^ b) = da ^ b - a ^ db`` on 2-forms. With this sign,
``d (w^l_{i,j})^* = (w^{l-1}_{i,j})^* ^ v_j^*``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from chainsymp import exterior
from chainsymp.chain import ChainLieAlgebra, build
from chainsymp.exterior import Form
from chainsymp.graph import (
    F1,
    ChainDigraph,
    Edge,
    NotInFamily,
    classify,
    in_family,
    member_tags,
    validate,
)
from chainsymp.lie import LieAlgebra

log = logging.getLogger(__name__)


class NotInFamilyError(ValueError):
    pass


def d_one(xi: Form, alg: LieAlgebra) -> Form:
    if xi.degree != 1 or xi.dim != alg.dim:
        raise exterior.DimensionMismatch("d_one needs a 1-form on the algebra")
    cod = alg.coderivative()
    terms: dict = {}
    for (r,), c in xi.terms.items():
        for s, t, coef in cod[r]:
            terms[(s, t)] = terms.get((s, t), 0) + c * coef
    return Form(alg.dim, 2, terms)


def d_two(w: Form, alg: LieAlgebra) -> Form:
    if w.degree != 2 or w.dim != alg.dim:
        raise exterior.DimensionMismatch("d_two needs a 2-form on the algebra")
    n = alg.dim
    out = Form.zero(n, 3)
    if n < 3:
        return out
    for (s, t), c in w.terms.items():
        xs, xt = Form.dual(n, s), Form.dual(n, t)
        out = out + c * (exterior.wedge(d_one(xs, alg), xt) - exterior.wedge(xs, d_one(xt, alg)))
    return out


def sigma_edge(edge: Edge, alg: ChainLieAlgebra) -> Form:
    """The closed 2-form attached to one edge (even and odd chain values)."""
    if edge not in alg.graph.edges:
        raise ValueError(f"edge {edge} is not in the graph")
    n = alg.dim
    kappa = edge.kappa
    terms: dict = {}
    if kappa % 2:
        terms[(alg.vertex(edge.head), alg.w(edge, kappa))] = 1
        kappa -= 1
    for l in range(1, kappa // 2 + 1):
        terms[(alg.w(edge, l), alg.w(edge, kappa + 1 - l))] = (-1) ** (l + 1)
    return Form(n, 2, terms)


def sigma_E(alg: ChainLieAlgebra) -> Form:
    out = Form.zero(alg.dim, 2)
    for e in alg.graph.edges:
        out = out + sigma_edge(e, alg)
    return out


def sigma_G(g: ChainDigraph, tag, alg: Optional[ChainLieAlgebra] = None) -> Form:
    """``sigma_E`` plus ``root_a^* ^ root_b^*`` for every F1 member."""
    if not in_family(tag):
        raise NotInFamilyError(f"{tag.reason}: {tag.detail}")
    if alg is None:
        alg = build(g)
    out = sigma_E(alg)
    pairs = {}
    for m in member_tags(tag):
        if isinstance(m, F1):
            pairs[(alg.vertex(m.root_a), alg.vertex(m.root_b))] = 1
    return out + Form(alg.dim, 2, pairs)


def is_perfect_matching(w: Form) -> bool:
    """Whether every basis index occurs in exactly one term of ``w``."""
    seen: list[int] = [i for key in w.terms for i in key]
    return len(seen) == len(set(seen)) == w.dim


def evaluate_d_form(w: Form, alg: LieAlgebra, x: int, y: int, z: int) -> Fraction:
    """``w([x,y],z) - w([x,z],y) + w([y,z],x)`` on basis elements, computed
    from the brackets without forming any 3-form."""

    def w_on(vec, b):
        return sum((c * w.coefficient(r, b) for r, c in vec.items() if r != b), Fraction(0))

    return (
        w_on(alg.bracket_basis(x, y), z)
        - w_on(alg.bracket_basis(x, z), y)
        + w_on(alg.bracket_basis(y, z), x)
    )


@dataclass
class SymplecticReport:
    dimension: int
    step: int
    type: List[int]
    necessary_ok: bool
    reasons: List[str]
    family: object
    form: Optional[Form] = None
    closed: Optional[bool] = None
    nondegenerate: Optional[bool] = None
    matching: Optional[bool] = None
    gram_determinant: Optional[Fraction] = None
    top_power_agrees: Optional[bool] = None
    labels: List[str] = field(default_factory=list, repr=False)

    @property
    def verdict(self) -> str:
        """``symplectic``, ``not-symplectic`` (necessary condition fails),
        ``unknown`` (outside the proven families), or ``failed`` when a
        family form does not check out."""
        if not self.necessary_ok:
            return "not-symplectic"
        if self.form is None:
            return "unknown"
        if self.closed and self.nondegenerate:
            return "symplectic"
        return "failed"

    @property
    def symplectic(self) -> bool:
        return self.verdict == "symplectic"

    def to_dict(self) -> dict:
        out = {
            "dimension": self.dimension,
            "step": self.step,
            "type": list(self.type),
            "family": str(self.family),
            "necessary": {"ok": self.necessary_ok, "reasons": list(self.reasons)},
            "closed": self.closed,
            "nondegenerate": self.nondegenerate,
            "verdict": self.verdict,
            "symplectic": self.symplectic,
        }
        if isinstance(self.family, NotInFamily):
            out["family_reason"] = self.family.reason
        if self.gram_determinant is not None:
            out["gram_determinant"] = str(self.gram_determinant)
        if self.top_power_agrees is not None:
            out["top_power_agrees"] = self.top_power_agrees
        if self.form is not None:
            out["form"] = [
                [[self.labels[s], self.labels[t]], str(c)] for (s, t), c in sorted(self.form.terms.items())
            ]
        return out


def necessary_conditions(g: ChainDigraph, alg: LieAlgebra) -> List[str]:
    """Reasons the algebra cannot be symplectic; empty when none apply."""
    reasons = []
    if alg.dim % 2:
        reasons.append("OddDimension")
    if len(g.edges) > len(g.vertices):
        reasons.append("EdgeExcess")
    if alg.center_dim() > alg.derived_codim():
        reasons.append("CenterExceedsAbelianization")
    return reasons


def verify(g: ChainDigraph, cross_check: bool = False) -> SymplecticReport:
    """Run the necessary conditions, classify, and check the family form.

    With ``cross_check`` the wedge-power test also runs (dimension <= 12).
    """
    validate(g)
    alg = build(g)
    typ = alg.nilpotency_type()
    reasons = necessary_conditions(g, alg)
    tag = classify(g)
    report = SymplecticReport(
        dimension=alg.dim,
        step=len(typ) - 1,
        type=typ,
        necessary_ok=not reasons,
        reasons=reasons,
        family=tag,
        labels=list(alg.labels),
    )
    if not in_family(tag):
        return report
    if reasons:
        # cannot happen for family members; keep the report honest if it does
        log.error("family member %s fails necessary conditions %s", tag, reasons)
    w = sigma_G(g, tag, alg)
    report.form = w
    report.closed = not d_two(w, alg)
    report.matching = is_perfect_matching(w)
    report.gram_determinant = exterior.gram_determinant(w)
    report.nondegenerate = report.gram_determinant != 0
    if cross_check and alg.dim <= 12:
        report.top_power_agrees = exterior.top_power_nonzero(w) == report.nondegenerate
    return report
