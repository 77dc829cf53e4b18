"""
Truncated power series in one size variable

A Series knows its coefficients exactly up to ``order`` and nothing beyond:
every operation returns the largest order it can vouch for.
"""

from dataclasses import dataclass
from typing import Callable, Iterable, List, Tuple

from sympy.polys.rings import PolyElement

from algebra.polys import (
    MPoly,
    RING,
    coeff_in,
    degree_in,
    exact_quotient,
    gen,
    rational,
)
from algebra.linear import format_value
from core.errors import TruncationError, UncleanDivisionError


@dataclass(frozen=True)
class Series:
    """Power series ``sum_n coeffs[n] * var**n + O(var**(order+1))``.

    Coefficients are polynomials free of ``var`` (or RatFrac values when a
    rational specialization is involved).
    """

    var: str
    coeffs: Tuple

    def __post_init__(self):
        if not self.coeffs:
            raise TruncationError("a series needs at least its constant coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    # construction

    @classmethod
    def zero(cls, var: str, order: int, ring=RING) -> "Series":
        return cls(var, tuple(ring.zero for _ in range(order + 1)))

    @classmethod
    def from_poly(cls, p: MPoly, var: str, order: int) -> "Series":
        """Series of a polynomial, collected by powers of ``var``."""
        top = degree_in(p, var)
        coeffs = []
        for n in range(order + 1):
            coeffs.append(coeff_in(p, var, n) if n <= top else p.ring.zero)
        return cls(var, tuple(coeffs))

    @classmethod
    def from_coeffs(cls, var: str, coeffs: Iterable) -> "Series":
        return cls(var, tuple(coeffs))

    # accessors

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def _zero(self):
        return self.coeffs[0] * 0

    def coeff(self, n: int):
        if n < 0:
            return self._zero()
        if n > self.order:
            raise TruncationError(f"coefficient {self.var}^{n} beyond order {self.order}")
        return self.coeffs[n]

    def __getitem__(self, n: int):
        return self.coeff(n)

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; ``order + 1`` for zero."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return self.order + 1

    def first_nonzero(self):
        n = self.valuation()
        return (n, self.coeffs[n]) if n <= self.order else None

    # arithmetic

    def _check(self, other: "Series") -> None:
        if other.var != self.var:
            raise TruncationError(f"size variable mismatch: {self.var} vs {other.var}")

    def _promote(self, other) -> "Series":
        if isinstance(other, Series):
            self._check(other)
            return other
        zero = self._zero()
        if isinstance(other, PolyElement):
            if _mentions(other, self.var):
                return Series.from_poly(other, self.var, self.order).map(lambda c: zero + c)
            return Series(self.var, tuple([zero + other] + [zero] * self.order))
        return Series(self.var, tuple([zero + _scalar(other)] + [zero] * self.order))

    def __add__(self, other) -> "Series":
        other = self._promote(other)
        n = min(self.order, other.order)
        return Series(self.var, tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)))

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Series":
        other = self._promote(other)
        n = min(self.order, other.order)
        return Series(self.var, tuple(self.coeffs[k] - other.coeffs[k] for k in range(n + 1)))

    def __rsub__(self, other) -> "Series":
        return self._promote(other) - self

    def __mul__(self, other) -> "Series":
        if isinstance(other, Series):
            return series_mul(self, other)
        if isinstance(other, PolyElement) and _mentions(other, self.var):
            return series_mul(self, Series.from_poly(other, self.var, self.order))
        scalar = _scalar(other)
        return Series(self.var, tuple(c * scalar for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Series":
        if k < 0:
            raise ValueError("negative powers of a series are not supported")
        result = self._promote(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # calculus and shifts

    def derivative(self) -> "Series":
        """Formal derivative in ``var``; the order drops by one."""
        if self.order == 0:
            raise TruncationError("derivative of a series known only at order 0")
        return Series(self.var, tuple(n * self.coeffs[n] for n in range(1, self.order + 1)))

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return Series(self.var, self.coeffs[: order + 1])

    def shift(self, k: int) -> "Series":
        """Multiplication by ``var**k``."""
        return Series(self.var, tuple([self._zero()] * k) + self.coeffs)

    def unshift(self, k: int) -> "Series":
        """Division by ``var**k``; the first ``k`` coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise UncleanDivisionError(f"series division by {self.var}^{k}")
        if k > self.order:
            raise TruncationError(f"division by {self.var}^{k} leaves no coefficient")
        return Series(self.var, self.coeffs[k:])

    def exact_divide(self, d: MPoly, where: str = "series exact division") -> "Series":
        """Divides every coefficient by the polynomial ``d`` exactly."""
        return Series(self.var, tuple(exact_quotient(c, d, f"{where} at {self.var}^{n}")
                                      for n, c in enumerate(self.coeffs)))

    def map(self, fn: Callable) -> "Series":
        return Series(self.var, tuple(fn(c) for c in self.coeffs))

    def rescale(self, factor) -> "Series":
        """Series of ``S(factor * var)``: coefficient ``n`` times ``factor**n``."""
        power = self._zero() + 1
        coeffs = []
        for c in self.coeffs:
            coeffs.append(c * power)
            power = power * factor
        return Series(self.var, tuple(coeffs))

    def to_poly(self) -> MPoly:
        """Polynomial ``sum_n coeffs[n] var**n`` in the coefficient ring."""
        first = self.coeffs[0]
        v = gen(self.var, first.ring)
        return sum((c * v ** n for n, c in enumerate(self.coeffs)), first.ring.zero)

    def format(self) -> List[str]:
        return [format_value(c) for c in self.coeffs]

    def __repr__(self) -> str:
        shown = " + ".join(f"({format_value(c)})*{self.var}^{n}"
                           for n, c in enumerate(self.coeffs) if c) or "0"
        return f"Series({shown} + O({self.var}^{self.order + 1}))"


def _mentions(p: MPoly, var: str) -> bool:
    return var in [str(s) for s in p.ring.symbols] and degree_in(p, var) > 0


def _scalar(value):
    if isinstance(value, (int, str)):
        return rational(value)
    return value


def series_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at the smaller of the two orders.

    Raises:
        TruncationError: When the operands use different size variables
    """
    if a.var != b.var:
        raise TruncationError(f"size variable mismatch: {a.var} vs {b.var}")
    n = min(a.order, b.order)
    zero = a._zero()
    out = []
    for k in range(n + 1):
        acc = zero
        for i in range(k + 1):
            ai = a.coeffs[i]
            if not ai:
                continue
            bj = b.coeffs[k - i]
            if bj:
                acc = acc + ai * bj
        out.append(acc)
    return Series(a.var, tuple(out))
