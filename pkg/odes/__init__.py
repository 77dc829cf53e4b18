"""Special-case differential equations and the suites checking them"""

from odes.recurrences import h_recurrence, tutte_recurrence
from odes.spec import OdeSpec, available_fixtures, load_fixture, ode_residual
from odes.special import SUITES, run_suite, suites_for

__all__ = [
    "OdeSpec",
    "SUITES",
    "available_fixtures",
    "h_recurrence",
    "load_fixture",
    "ode_residual",
    "run_suite",
    "suites_for",
    "tutte_recurrence",
]
