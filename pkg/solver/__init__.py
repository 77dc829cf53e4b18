"""Order-by-order solvers for the Potts differential systems"""

from solver.models import MAPS, TRIANGULATIONS, Model, ModelSpec, get_spec
from solver.system import SolverState, advance_order, initial_state, solve, system_residual

__all__ = [
    "MAPS",
    "TRIANGULATIONS",
    "Model",
    "ModelSpec",
    "SolverState",
    "advance_order",
    "get_spec",
    "initial_state",
    "solve",
    "system_residual",
]
