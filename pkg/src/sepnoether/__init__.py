"""Noether and separating Noether numbers of small finite groups, computed over F_p."""

from .ffield import PrimeField, choose_prime, element_of_order
from .mpoly import Polynomial, VariableContext, parse_polynomial, format_polynomial
from .groebner import IdealBasis, buchberger, normal_form, radical_member
from .grp import MatrixRep, mu
from .invar import ModuleSpec, make_block, invariant_basis, minimal_generators, reynolds
from .septool import WitnessPair, verify_witness, betasep_via_radical, betasep_group, davenport
from . import catalog

__version__ = "0.1.0"
