"""Finite dynamical systems over prime fields: analysis, enumeration and simulation."""

from .errors import FDSError
from .gf import FieldElement, UPoly, parse_upoly, upoly_factor, upoly_gcd, upoly_order
from .multipoly import MPoly, bool_to_poly, mp_eval, mp_interpolate, mp_support, parse_bool, parse_poly
from .system import System, build_system, materialize_global, step, step_parallel, step_word
from .phase import PhaseSpace, enumerate_phase_space, fixed_points, is_invertible, reachable
from .linear import as_linear, min_poly, predict_affine_cycle_structure, predict_cycle_structure, verify_transient_trees
from .monomial import fixed_point_criterion, loop_numbers
from .updorder import enumerate_acyclic_orientations, same_sds, update_graph_components
from .stochastic import PFDS, SFDS, simulate, stationary_distribution, stochastic_phase_space, transition_matrix
from .specfile import SpecFile, format_spec, load_model, parse_spec
from .generators import gen_example, nor_system, parity_system

__version__ = "0.1.0"
