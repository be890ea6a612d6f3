"""Formal power-series solutions of holonomic systems.

Bases of Ext^d(D/I, O) at the origin from an adapted free resolution, the
b-function of the weight (-w, w) and exact truncated linear algebra.
"""

from .bfunction import BFunction, compute_b, integral_roots
from .encoding import (
    Enumeration,
    Position,
    SeriesSolution,
    TruncatedMatrix,
    boundary_matrix,
    enumerate_positions,
    sigma,
    sigma_inv,
    truncate,
    truncate_map,
)
from .groebner import GroebnerBasis, buchberger, divide, initial_module, is_member, leading_term
from .kernels import BACKEND
from .parsing import ParseContext, parse_bfunction, parse_operator, read_problem
from .resolution import ShiftedComplex, build_resolution, schreyer_step, verify_adapted
from .solver import (
    ExtBasis,
    ProblemSpec,
    dim_ext,
    extend_once,
    residual_check,
    seed_basis,
    select_slice,
    solve_ext,
)
from .weyl import WeightOrder, WeylOp, WeylTerm, add, initial_form, mul, normally_ordered_at_zero, ord

__version__ = "0.1.0"
