"""Exact solvers for the colorful Caratheodory problem.

Everything runs over exact rationals.  Three independent solver routes
(a combinatorial path-following walk, local search on an exact distance
potential, and a bisection scheme for the two-class split problem) plus
the classical reductions built on top of them: Tverberg partitions,
centerpoints, and points of high simplicial depth.  Every result
carries coefficients that make it checkable by plain arithmetic.
"""

from .errors import (
    BudgetExceededError,
    CcpError,
    GeneralPositionError,
    ParseError,
    PreconditionError,
    TheoremViolationError,
)
from .instance import (
    CcpInstance,
    ColorfulChoice,
    choice_is_certified,
    perturb_to_general_position,
)
from .io import load_instance, loads_instance, save_instance
from .localsearch import run_local_search
from .rat import BACKEND, rat
from .reductions import (
    centerpoint,
    simplicial_depth_point,
    solve_tverberg,
)
from .solvers import METHODS, SolveOutcome, solve_instance
from .twocolor import find_split
from .walk import run_standard_walk

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceededError",
    "CcpError",
    "CcpInstance",
    "ColorfulChoice",
    "GeneralPositionError",
    "METHODS",
    "ParseError",
    "PreconditionError",
    "SolveOutcome",
    "TheoremViolationError",
    "centerpoint",
    "choice_is_certified",
    "find_split",
    "load_instance",
    "loads_instance",
    "perturb_to_general_position",
    "rat",
    "run_local_search",
    "run_standard_walk",
    "save_instance",
    "simplicial_depth_point",
    "solve_instance",
    "solve_tverberg",
    "__version__",
]
