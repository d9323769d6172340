"""Finite Heyting algebras, their dual posets, and the diamond/cascade classifiers."""

from .algebra import HeytingAlgebra, algebra_from_tables, heyting_from_upsets
from .catalog import (decide_equations, decide_generated, decide_primitive_generated,
                      decide_representable_generated, diamond_sequence, named,
                      truncated_counterexample)
from .classifiers import (decompose_shapes, is_cascade, is_cascade_width, is_diamond_algebra,
                          is_diamond_sequence, is_diamond_system, is_root_system, three_point_rule)
from .duality import check_pmorphism, gamma_iso, in_SH_oracle, jankov_valid, prime_spectrum
from .formulas import parse, parse_equation, to_text, valid_in, valid_on_poset
from .poset import Poset, antichain, chain, depth, isomorphic, new_poset, width

__all__ = [
    "HeytingAlgebra", "Poset", "algebra_from_tables", "antichain", "chain", "check_pmorphism",
    "decide_equations", "decide_generated", "decide_primitive_generated",
    "decide_representable_generated", "decompose_shapes", "depth", "diamond_sequence",
    "gamma_iso", "heyting_from_upsets", "in_SH_oracle", "is_cascade", "is_cascade_width",
    "is_diamond_algebra", "is_diamond_sequence", "is_diamond_system", "is_root_system",
    "isomorphic", "jankov_valid", "named", "new_poset", "parse", "parse_equation",
    "prime_spectrum", "three_point_rule", "to_text", "truncated_counterexample", "valid_in",
    "valid_on_poset", "width",
]
