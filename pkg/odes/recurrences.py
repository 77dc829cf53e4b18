"""Coefficient recurrences for Tutte's proper-colouring series"""

from dataclasses import dataclass
from typing import Callable, List, Tuple

from algebra.polys import MPoly, RING, const, exact_quotient, q
from algebra.series import Series

# rule(a, n) returns coefficient n + 2 from a[0..n+1]
Rule = Callable[[List[MPoly], int], MPoly]


@dataclass(frozen=True)
class RecurrenceSpec:
    """A recurrence computing a power series coefficient by coefficient.

    Attributes:
        name: Name of the series
        var: Variable of the series
        initial: Coefficients 0, 1, ... given outright
        rule: Computes coefficient n + 2 from the coefficients up to n + 1
    """
    name: str
    var: str
    initial: Tuple[MPoly, ...]
    rule: Rule

    def run(self, order: int) -> Series:
        coeffs = list(self.initial[: order + 1])
        while len(coeffs) < order + 1:
            n = len(coeffs) - 2
            coeffs.append(self.rule(coeffs, n))
        return Series(self.var, tuple(coeffs))


def _convolution(a: List[MPoly], n: int) -> MPoly:
    total = RING.zero
    for i in range(1, n + 1):
        total += i * (i + 1) * (3 * n - 3 * i + 1) * a[i + 1] * a[n + 2 - i]
    return total


def _tutte_rule(a: List[MPoly], n: int) -> MPoly:
    rhs = (q - 4) * (3 * n - 1) * (3 * n - 2) * a[n + 1] + 2 * _convolution(a, n)
    return rhs * const(1, (n + 1) * (n + 2))


def _h_rule(h: List[MPoly], n: int) -> MPoly:
    rhs = q * (q - 4) * (3 * n - 1) * (3 * n - 2) * h[n + 1] + 2 * _convolution(h, n)
    return exact_quotient(rhs, (n + 1) * (n + 2) * q, f"h_{n + 2} recurrence")


TUTTE_T2 = RecurrenceSpec(
    name="T2",
    var="w",
    initial=(RING.zero, RING.zero, q - 1),
    rule=_tutte_rule,
)

# h_n = q a_n counts properly q-coloured rooted triangulations with n vertices
TUTTE_H = RecurrenceSpec(
    name="H",
    var="w",
    initial=(RING.zero, RING.zero, q * (q - 1)),
    rule=_h_rule,
)


def tutte_recurrence(order: int) -> Series:
    """T_2 = sum_n a_n(q) w^n at nu = 0, from Tutte's recurrence.

    Raises:
        ValueError: When ``order`` is below 2
    """
    if order < 2:
        raise ValueError("the recurrence starts at w^2")
    return TUTTE_T2.run(order)


def h_recurrence(order: int) -> Series:
    """H = q T_2, by the q-scaled form of the same recurrence."""
    if order < 2:
        raise ValueError("the recurrence starts at w^2")
    return TUTTE_H.run(order)
