"""Exact analysis of finite-dimensional spaces of rational functions in one variable.

The package computes the filtered basis, the genus sequence of a space S
(how far dim S_i^2 exceeds 2i - 1), minimal divisors, Riemann-Roch spaces,
generated-subfield indices and the 3k - 4 machinery for integer sets.
"""

from .analysis import CHECKLIST, AnalysisReport, Finding, analyze
from .fields import GF, QQ, Field, parse_field
from .filtration import FilteredBasis, filtered_basis, genus_profile
from .freiman import IntSet, freiman_3k4, monomial_space, sumset
from .generators import InstanceSpec, canonical_gamma0, canonical_gamma1, degree_family, random_in_RR
from .parser import parse_instance_file, parse_ratfunc
from .places import Divisor, Place, minimal_divisor, parse_divisor, riemann_roch_space
from .poly import Poly
from .ratfunc import RatFunc
from .subspace import Subspace, span
from .tower import express_in, luroth_generator, subfield_index, subfield_index_chain

__all__ = [
    "CHECKLIST", "AnalysisReport", "Finding", "analyze",
    "GF", "QQ", "Field", "parse_field",
    "FilteredBasis", "filtered_basis", "genus_profile",
    "IntSet", "freiman_3k4", "monomial_space", "sumset",
    "InstanceSpec", "canonical_gamma0", "canonical_gamma1", "degree_family", "random_in_RR",
    "parse_instance_file", "parse_ratfunc",
    "Divisor", "Place", "minimal_divisor", "parse_divisor", "riemann_roch_space",
    "Poly", "RatFunc", "Subspace", "span",
    "express_in", "luroth_generator", "subfield_index", "subfield_index_chain",
]
