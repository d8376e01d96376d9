"""Exact-arithmetic calculator for finite-dimensional coalgebras,
comodules and bicomodules, their duals and coduals, and first order
codifferential calculi, with machine verification of every structural
identity they satisfy."""

from .coalgebra import (Coalgebra, DualAlgebra, Violation, dual_algebra,
                        is_cocommutative, validate_algebra, validate_coalgebra,
                        verify_dimodule, zoo, zoo_members)
from .codual import (CodualSpace, CounitPairingReport, comodule_map_space,
                     comodule_map_space_right, counit_pairing_iso, left_codual,
                     right_codual)
from .comodule import (Bicomodule, LeftComodule, RightComodule, dual_bicomodule,
                       dual_of_left, dual_of_right, hom_coaction,
                       hom_coaction_factored, regular_bicomodule, regular_left,
                       regular_right, switch_bicomodule, tensor_bicomodule,
                       validate_bicomodule, validate_left, validate_right,
                       verify_quadruple)
from .errors import (CoalgError, DimensionError, InvalidStructureError,
                     ParseError, PreconditionError, UsageError)
from .focc import (CartanLawVerdict, Focc, ProbeReport, SwitchVerdict,
                   cartan_map, coder_space, coderivation_defect, focc_space,
                   is_coderivation, kahler_probe, verify_cartan_comodule_law,
                   verify_switch_coderivations, zero_focc)
from .linalg import (Q, SolutionSpace, contract, coords_in_span, nullspace_basis,
                     qarray, rank, rref, tensors_equal)
from .serialize import NamedMap, emit_structure, parse_structure, resolve_zoo_uri

__version__ = "0.1.0"
