"""Gluing solver for MRHS linear systems over prime fields, plus tools for
the rank-deficit ordering problem that governs its average cost."""

from .constructions import (
    family_to_system,
    gv_pair_family,
    random_family,
    random_system,
    theorem10_family,
    vandermonde_family,
)
from .deficit import (
    DeficitReport,
    Growth,
    VectorFamily,
    min_deficit_bruteforce,
    min_deficit_exact,
    min_deficit_greedy,
    prefix_deficit,
    universal_bound,
    upper_bound_check,
)
from .errors import MrhsError
from .gf import FieldSpec, mul_inv, smallest_prime_at_least
from .linalg import Mat, echelonize, rank, solve_point, stack_reduce
from .mrhs import (
    CostTrace,
    MrhsEquation,
    MrhsSystem,
    extract_solutions,
    glue,
    make_equation,
    predicted_cost_bound,
    random_rhs,
    solve_system,
)
from .harness import simulate

__version__ = "0.1.0"
