"""Switching of m-edge-coloured graphs with respect to permutation groups.

A library and CLI for the switching operation (permuting the colours of
the edges at a vertex by a group element), switch-equivalence with
explicit replayable witnesses, and switchable homomorphism / k-colouring
decisions, with every theorem fast path checkable against a brute-force
reachability oracle.
"""

from .errors import CapExceededError, NoPropertyTError, NoWitnessError, ParseError
from .graphs import (EdgeColouredGraph, coloured_isomorphism, cycle_basis,
                     is_homomorphism, iter_underlying_isomorphisms,
                     underlying_isomorphism)
from .graphs import parse as parse_graph
from .graphs import serialize as serialize_graph
from .groups import (BlockStructure, PermGroup, Permutation, PropertyTWitness,
                     compose, dihedral_blocks, find_T_witness,
                     first_property_t_colour, generate_closure,
                     has_property_Tj, make_named, parse_group_spec)
from .homomorphisms import (alternating_c4, build_hom_reduction,
                            build_kcol_reduction, hom_exists,
                            hom_to_alternating_c4, k_colouring_exists,
                            plain_k_colouring, s2_switchable_hom,
                            switchable_hom_by_oracle, switchable_hom_exists,
                            switchable_k_colouring,
                            switchable_k_colouring_by_oracle,
                            switchable_k_colouring_exact, verify_hom_witness,
                            verify_kcol_witness)
from .switching import (DecisionOutcome, SwitchClass, SwitchingSequence,
                        Witness, apply_sequence, iter_reachable,
                        monochromatize_sequence, reachable_signatures,
                        recolour_edge_sequence, s2_equivalent_labelled,
                        switch_equivalent, switch_equivalent_by_oracle,
                        switch_once, verify_equivalence_witness)

__version__ = "0.1.0"
