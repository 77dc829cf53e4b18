"""Exception hierarchy for pottsmaps computations"""

from typing import Optional


class PottsError(RuntimeError):
    """Base class for every failure raised by a computation."""


class TruncationError(PottsError):
    """Operands with mismatched size variables or an impossible truncation."""


class UncleanDivisionError(PottsError):
    """An exact division left a nonzero remainder.

    Args:
        where: Short description of the division that failed
    """

    def __init__(self, where: str):
        self.where = where
        super().__init__(f"division does not clear exactly: {where}")


class SingularSystemError(PottsError):
    """The linear system at some order has a vanishing determinant.

    Args:
        order: Order i of the system S_i
        determinant: Textual form of the determinant (usually "0")
    """

    def __init__(self, order: Optional[int] = None, determinant: str = "0", model: Optional[str] = None):
        self.order = order
        self.determinant = determinant
        self.model = model
        prefix = f"{model} " if model else ""
        where = f"system at order {order}" if order is not None else "linear system"
        super().__init__(f"{prefix}{where} is singular (determinant {determinant})")


class SpecializationError(PottsError):
    """A binding annihilates a factor of a recorded determinant.

    Args:
        factor: Textual form of the vanishing factor
    """

    def __init__(self, factor: str, bindings: Optional[str] = None):
        self.factor = factor
        self.bindings = bindings
        suffix = f" under {bindings}" if bindings else ""
        super().__init__(f"determinant factor {factor} vanishes{suffix}")


class FixtureError(PottsError):
    """Malformed or inconsistent transcribed equation fixture."""


class EnumerationLimitError(PottsError):
    """Requested map enumeration beyond the supported edge count."""
