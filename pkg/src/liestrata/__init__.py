"""Exact-arithmetic toolkit for Chevalley Lie algebras of simple type.

Root systems and Weyl group actions (:mod:`rootsys`), structure constants
and the adjoint representation over Q or GF(p) (:mod:`chevalley`), gradings
by cocharacters (:mod:`grading`), weighted Dynkin diagram and orbit data
(:mod:`catalog`) and a declarative claims harness (:mod:`verify`).
"""

from __future__ import annotations

from .catalog import default_catalog, is_weighted_dynkin_diagram, load_catalog, lookup_wdd
from .chevalley import ChevalleyAlgebra, LieElement, build_algebra, p_power
from .exactlinalg import ExactMatrix, FieldSpec, nilpotent_jordan_partition, nullspace, rank
from .grading import (
    IntegerFamily,
    bracket_image_dim,
    duality_identity_check,
    grade,
    graded_centralizer_dims,
    pairing_perfect,
    solve_grading_constraints,
)
from .rootsys import RootSystem, build_root_system, dominant_conjugate
from .verify import run_claims

__version__ = "0.1.0"

__all__ = [
    "ChevalleyAlgebra",
    "ExactMatrix",
    "FieldSpec",
    "IntegerFamily",
    "LieElement",
    "RootSystem",
    "bracket_image_dim",
    "build_algebra",
    "build_root_system",
    "default_catalog",
    "dominant_conjugate",
    "duality_identity_check",
    "grade",
    "graded_centralizer_dims",
    "is_weighted_dynkin_diagram",
    "load_catalog",
    "lookup_wdd",
    "nilpotent_jordan_partition",
    "nullspace",
    "p_power",
    "pairing_perfect",
    "rank",
    "run_claims",
    "solve_grading_constraints",
]
