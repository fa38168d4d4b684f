"""Solve zero-dimensional polynomial systems over Q through triangular
decompositions computed with multi-modular methods."""
from .arith import crt_lift, farey_reconstruct, generate_prime_batch, rational_mod
from .estimator import ModularSolver
from .groebner import GroebnerBasis, is_groebner, normal_form, reduced_groebner, s_polynomial
from .ideals import (DimensionError, Ideal, ideal_contains, ideal_quotient, is_zero_dimensional,
                     saturation, standard_monomials, vdim)
from .modular import ModularConfig, ModularFailure, mod_decompose
from .parser import ParseError, parse_polynomial, parse_system
from .pipeline import RunConfig, RunResult, run_pipeline
from .poly import Polynomial, Ring, lex_compare
from .triang import TriangularDecomposition, TriangularSet, triang_m, triang_m_disjoint
from .unisolve import refine_point, solve_triang, test_zero, uni_roots

__version__ = "0.1.0"

__all__ = [
    "DimensionError", "GroebnerBasis", "Ideal", "ModularConfig", "ModularFailure",
    "ModularSolver", "ParseError", "Polynomial", "Ring", "RunConfig", "RunResult",
    "TriangularDecomposition", "TriangularSet", "crt_lift", "farey_reconstruct",
    "generate_prime_batch", "ideal_contains", "ideal_quotient", "is_groebner",
    "is_zero_dimensional", "lex_compare", "mod_decompose", "normal_form", "parse_polynomial",
    "parse_system", "rational_mod", "reduced_groebner", "refine_point", "run_pipeline",
    "s_polynomial", "saturation", "solve_triang", "standard_monomials", "test_zero",
    "triang_m", "triang_m_disjoint", "uni_roots", "vdim",
]
