"""Exact computations for (a,b)-homogeneous algebras: Koszulity checks and Hochschild homology."""

from .exactla import QQ, PrimeField, Subspace, field_from_tag
from .tensorgraded import AlgebraCache, Presentation, make_presentation
from .koszulchecker import KoszulChecker, koszul_verdict
from .hochschild import hh_table

__all__ = [
    "QQ",
    "PrimeField",
    "Subspace",
    "field_from_tag",
    "AlgebraCache",
    "Presentation",
    "make_presentation",
    "KoszulChecker",
    "koszul_verdict",
    "hh_table",
]
