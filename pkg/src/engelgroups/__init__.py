"""Engel subgroups, Fitting-type series and nonsoluble length for permutation groups."""

from .config import Caps, current_caps, use_caps
from .engel import (commutator_chain, engel_sets, engel_subgroup, engel_subgroup_aut, engel_verdict,
                    is_left_engel)
from .errors import (CapExceeded, DegreeMismatch, GroupError, IndexCapExceeded, InvalidPermutation,
                     NotMember, NotNormalized, NotSoluble, NotSubgroup, ParseError, PremiseFailed,
                     TwistNotNormalizing, UnknownConstructor)
from .group import Group, coset_action, intersection, join
from .perm import Permutation, commutator, conjugate, format_cycles, parse_cycles
from .products import (build_twisted_power, classify_orbits, d_subgroup, diagonal, diagonal_overgroups,
                       factor_commutator_subgroup, lex_prec, question1_probe, search_conjugator)
from .series import (center, classify_simplicity, derived_series, fitting, fitting_series,
                     generalized_fitting, generalized_fitting_series, is_soluble, nonsoluble_length,
                     nonsoluble_series, normal_closure, omega, soluble_radical)

__all__ = [
    "Caps", "current_caps", "use_caps",
    "commutator_chain", "engel_sets", "engel_subgroup", "engel_subgroup_aut", "engel_verdict",
    "is_left_engel",
    "CapExceeded", "DegreeMismatch", "GroupError", "IndexCapExceeded", "InvalidPermutation",
    "NotMember", "NotNormalized", "NotSoluble", "NotSubgroup", "ParseError", "PremiseFailed",
    "TwistNotNormalizing", "UnknownConstructor",
    "Group", "coset_action", "intersection", "join",
    "Permutation", "commutator", "conjugate", "format_cycles", "parse_cycles",
    "build_twisted_power", "classify_orbits", "d_subgroup", "diagonal", "diagonal_overgroups",
    "factor_commutator_subgroup", "lex_prec", "question1_probe", "search_conjugator",
    "center", "classify_simplicity", "derived_series", "fitting", "fitting_series",
    "generalized_fitting", "generalized_fitting_series", "is_soluble", "nonsoluble_length",
    "nonsoluble_series", "normal_closure", "omega", "soluble_radical",
]
