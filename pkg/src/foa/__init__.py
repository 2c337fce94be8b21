"""Solvers for pairing collinear cameras and assigning the pairs to targets.

Two objectives are supported: maximising the sum of tracking angles and
minimising the sum of aspect ratios (target depth / baseline).
"""

from .angles import solve_maxsum_angles
from .errors import (
    BudgetExceeded,
    ConstraintViolated,
    DegenerateGeometry,
    FoaError,
    InstanceTooLarge,
    InvalidInstance,
    InvalidRange,
)
from .geometry import Instance, Point, project_targets, validate_for_angles, validate_for_ratios
from .heuristics import best_heuristic
from .oracle import SearchSpace, solve_exact
from .pairing import Assignment, CameraPairing, Objective, assign_angles, assign_ratios, evaluate
from .ratios import solve_minsum_ratios
from .report import Limits, SolveReport
from .solvers import Algorithm, solve

__version__ = "0.1.0"
