"""Exact decision procedures for quasi-free actions on Cuntz algebras."""
from __future__ import annotations

from .abelian import (
    AmbiguousSign,
    ClosureClass,
    IntVector,
    RealBasis,
    RealCoord,
    closed_subgroup_R,
    lattice_is_full_Zd,
    q_rank,
    sign,
    smith_normal_form,
    subsemigroup_R_is_all,
)
from .fusion import SU2, FiniteTable, ProductRing, builtin_table, cyclic, klein4, symmetric3
from .graph import (
    FusionGraph,
    build_fusion_graph,
    graph_simple,
    hereditary_saturated_sets,
    is_cofinal,
    k_theory,
    path_label_closure,
)
from .repn import AbelianDual, Representation, Summand, fock_contains, is_faithful, rep_dim
from .verdicts import AnalysisReport, Verdict, analyze

__version__ = "0.1.0"

__all__ = [
    "AbelianDual", "AmbiguousSign", "AnalysisReport", "ClosureClass", "FiniteTable",
    "FusionGraph", "IntVector", "ProductRing", "RealBasis", "RealCoord", "Representation",
    "SU2", "Summand", "Verdict", "analyze", "build_fusion_graph", "builtin_table",
    "closed_subgroup_R", "cyclic", "fock_contains", "graph_simple", "hereditary_saturated_sets",
    "is_cofinal", "is_faithful", "k_theory", "klein4", "lattice_is_full_Zd", "path_label_closure",
    "q_rank", "rep_dim", "sign", "smith_normal_form", "subsemigroup_R_is_all", "symmetric3",
]
