"""Residual reports shared by the solver, the equation suites and the oracles"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Union

from algebra.linear import format_value
from algebra.polys import MPoly
from algebra.series import Series


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of checking one identity.

    ``passed`` holds exactly when every coefficient of ``residual`` is zero.
    """
    name: str
    residual: Union[Series, MPoly, None]
    passed: bool
    detail: Optional[str] = None
    checked_order: Optional[int] = None

    @classmethod
    def of(cls, name: str, residual, detail: Optional[str] = None) -> "ResidualReport":
        if isinstance(residual, Series):
            passed = residual.is_zero()
            order = residual.order
        else:
            passed = not residual
            order = None
        if not passed and detail is None:
            detail = first_difference(residual)
        return cls(name=name, residual=residual, passed=passed, detail=detail, checked_order=order)

    @classmethod
    def boolean(cls, name: str, passed: bool, detail: Optional[str] = None) -> "ResidualReport":
        return cls(name=name, residual=None, passed=passed, detail=detail)

    def as_dict(self) -> Dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked_order": self.checked_order,
            "detail": self.detail,
        }


def first_difference(residual) -> Optional[str]:
    """Human-readable description of the first nonzero residual coefficient."""
    if isinstance(residual, Series):
        hit = residual.first_nonzero()
        if hit is None:
            return None
        n, c = hit
        return f"{residual.var}^{n}: {format_value(c)}"
    if residual is None or not residual:
        return None
    return format_value(residual)


def all_passed(reports: List[ResidualReport]) -> bool:
    return all(r.passed for r in reports)
