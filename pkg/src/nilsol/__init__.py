"""Exact-arithmetic search for ordered-type nilsoliton metric Lie algebras."""

from .index_sets import IndexSet, Triple, decode, encode, has_direct_sum_factor, theta
from .jacobi import (
    BracketTable,
    aggregated_system,
    jacobi_bruteforce,
    jacobi_check_via_system,
    jacobi_system,
)
from .linalg import AffineSolutionSet, rref, solve_affine
from .notation import parse_vector_notation, render_vector_notation
from .pipeline import PipelineConfig, Report, compare_with_tables, run
from .radicals import RadicalSum, SignedSqrt, radical_mul, radical_sum_is_zero, sqrt_to_radical
from .root_gram import gram, nullity, root_vector
from .solver import Verdict, resolve, verify_certificate
from .soliton import RicciData, is_ordered_type, ricci_from_brackets, ricci_from_v, soliton_data

__version__ = "0.1.0"

__all__ = [
    "AffineSolutionSet",
    "BracketTable",
    "IndexSet",
    "aggregated_system",
    "PipelineConfig",
    "RadicalSum",
    "Report",
    "RicciData",
    "SignedSqrt",
    "Triple",
    "Verdict",
    "compare_with_tables",
    "decode",
    "encode",
    "gram",
    "has_direct_sum_factor",
    "is_ordered_type",
    "jacobi_bruteforce",
    "jacobi_check_via_system",
    "jacobi_system",
    "nullity",
    "parse_vector_notation",
    "radical_mul",
    "radical_sum_is_zero",
    "render_vector_notation",
    "resolve",
    "ricci_from_brackets",
    "ricci_from_v",
    "root_vector",
    "rref",
    "run",
    "soliton_data",
    "solve_affine",
    "sqrt_to_radical",
    "theta",
    "verify_certificate",
]
