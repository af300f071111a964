"""Nilpotent Lie algebras of chain digraphs and their symplectic forms."""

from chainsymp.chain import ChainLieAlgebra, build
from chainsymp.exterior import Form
from chainsymp.graph import ChainDigraph, Edge, classify, validate
from chainsymp.lie import LieAlgebra
from chainsymp.realize import realize
from chainsymp.symplectic import verify

__all__ = [
    "ChainDigraph",
    "ChainLieAlgebra",
    "Edge",
    "Form",
    "LieAlgebra",
    "build",
    "classify",
    "realize",
    "validate",
    "verify",
]
