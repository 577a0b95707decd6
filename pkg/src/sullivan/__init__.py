"""Exact computations with 1-connected minimal Sullivan algebras over Q."""

__version__ = "0.1.0"

from .graded import AlgebraError, Element, FreeAlgebra
from .differential import SullivanAlgebra, check_d_squared, check_minimal_1connected, validate_algebra
from .bases import enumerate_basis, hilbert_count
from .cohomology import cohomology, obstruction_b
from .morphism import CochainMorphism, compose, homotopic_at_stage, linear_part, validate_morphism
from .witness import evaluate_witness, homotopy_witness, witness_is_cochain
from .selfequiv import brute_force_diagonal_oracle, compute_selfequiv_group, solve_unit_system
from .family import build_family
from .dsl import ParseError, emit_dsl, parse_dsl

__all__ = [
    "AlgebraError", "Element", "FreeAlgebra", "SullivanAlgebra", "check_d_squared",
    "check_minimal_1connected", "validate_algebra", "enumerate_basis", "hilbert_count", "cohomology",
    "obstruction_b", "CochainMorphism", "compose", "homotopic_at_stage", "linear_part", "validate_morphism",
    "evaluate_witness", "homotopy_witness", "witness_is_cochain", "brute_force_diagonal_oracle",
    "compute_selfequiv_group", "solve_unit_system", "build_family", "ParseError", "emit_dsl", "parse_dsl",
]
