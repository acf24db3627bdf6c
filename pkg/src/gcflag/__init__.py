"""Exact-arithmetic classification of invariant generalized complex
structures on partial flag manifolds, with an independent Nijenhuis-operator
oracle built from Chevalley structure constants."""

from .fibers import (
    Assignment,
    FiberStructure,
    IntegrabilityReport,
    NC_SAMPLE_POINTS,
    TypePattern,
    assignment_integrable,
    complex_type,
    enumerate_integrable_patterns,
    fiber_matrix,
    global_sign_flip,
    noncomplex_type,
    solve_noncomplex_chain,
    triple_integrable,
)
from .gaussian import GaussianRational
from .invariance import (
    CommutationBlock,
    adjoint_block,
    constancy_report,
    solve_commutation,
    verify_constancy,
)
from .isotropy import (
    FlagSpec,
    IsotropyComponent,
    IsotropyDecomposition,
    Triple,
    decompose_isotropy,
    enumerate_triples,
    flag_from_sigma_minus_theta,
    flag_from_theta,
    theta_span,
    verify_height_lemma,
)
from .nijenhuis import (
    OracleSession,
    RegularElement,
    bracket,
    eigenbasis,
    nijenhuis_eval,
    oracle_integrable,
)
from .roots import LieType, RootSystem, build_root_system

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "CommutationBlock",
    "FiberStructure",
    "FlagSpec",
    "GaussianRational",
    "IntegrabilityReport",
    "IsotropyComponent",
    "IsotropyDecomposition",
    "LieType",
    "NC_SAMPLE_POINTS",
    "OracleSession",
    "RegularElement",
    "RootSystem",
    "Triple",
    "TypePattern",
    "adjoint_block",
    "assignment_integrable",
    "bracket",
    "build_root_system",
    "complex_type",
    "constancy_report",
    "decompose_isotropy",
    "eigenbasis",
    "enumerate_integrable_patterns",
    "enumerate_triples",
    "fiber_matrix",
    "flag_from_sigma_minus_theta",
    "flag_from_theta",
    "global_sign_flip",
    "nijenhuis_eval",
    "noncomplex_type",
    "oracle_integrable",
    "solve_commutation",
    "solve_noncomplex_chain",
    "theta_span",
    "triple_integrable",
    "verify_constancy",
    "verify_height_lemma",
]
