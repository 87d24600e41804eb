"""Finite permutation groups, laws, and the wreath-product variety criterion."""
from .constructions import (build, cyclic, dihedral, elementary_abelian, expr_of,
                            free_nilpotent_class2, quaternion8, symmetric, alternating,
                            wreath_product)
from .dsl import parse_group_expr, parse_word
from .errors import GroupError, ParseError
from .group import FiniteGroup, Subgroup, generate_group
from .structure import (NotNilpotent, abelian_invariants, analyze, contains_direct_power, exponent,
                        fitting_subgroup, frattini_subgroup, lower_central_series,
                        nilpotency_class, sylow_subgroup)
from .variety import (Inconclusive, SearchBudget, SeparationCertificate, Verdict,
                      canonical_witness, decide_circ_product, decide_criterion,
                      decide_finite_generation, find_separating_law, is_in_variety)
from .words import EXHAUSTIVE, Sampled, basic_commutators, enumerate_words, evaluate, is_law

__version__ = "0.1.0"

__all__ = [
    "EXHAUSTIVE",
    "FiniteGroup",
    "GroupError",
    "Inconclusive",
    "NotNilpotent",
    "ParseError",
    "Sampled",
    "SearchBudget",
    "SeparationCertificate",
    "Subgroup",
    "Verdict",
    "abelian_invariants",
    "alternating",
    "analyze",
    "basic_commutators",
    "build",
    "canonical_witness",
    "contains_direct_power",
    "cyclic",
    "decide_circ_product",
    "decide_criterion",
    "decide_finite_generation",
    "dihedral",
    "elementary_abelian",
    "enumerate_words",
    "evaluate",
    "exponent",
    "expr_of",
    "find_separating_law",
    "fitting_subgroup",
    "frattini_subgroup",
    "free_nilpotent_class2",
    "generate_group",
    "is_in_variety",
    "is_law",
    "lower_central_series",
    "nilpotency_class",
    "parse_group_expr",
    "parse_word",
    "quaternion8",
    "sylow_subgroup",
    "symmetric",
    "wreath_product",
]
