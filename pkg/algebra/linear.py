"""
Exact linear algebra over polynomial rings

Rational functions are kept as numerator/denominator pairs without gcd
computations; systems are solved by Bareiss fraction-free elimination so
every intermediate entry stays a polynomial.
"""

from functools import reduce
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

from sympy import Symbol, fraction, sympify, together
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, PolyRing

from algebra.polys import MPoly, RING, evaluate, exact_quotient, format_poly, integer_content, parse_poly, rational
from core.errors import SingularSystemError, UncleanDivisionError


class RatFrac:
    """Quotient of two polynomials with a monic denominator.

    Only the rational leading coefficient of the denominator is normalized
    away; common polynomial factors are kept. Text output uses
    :func:`content_form` instead, with integer coefficients on both sides.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: Optional[MPoly] = None):
        if den is None:
            den = num.ring.one
        if not den:
            raise ZeroDivisionError("RatFrac with zero denominator")
        if den.ring != num.ring:
            den = den.set_ring(num.ring)
        if not num:
            den = num.ring.one
        else:
            lc = den.LC
            if lc != QQ.one:
                inv = QQ.one / lc
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def _coerce(self, other) -> "RatFrac":
        if isinstance(other, RatFrac):
            return other
        if isinstance(other, PolyElement):
            if other.ring != self.ring:
                other = other.set_ring(self.ring)
            return RatFrac(other)
        return RatFrac(self.ring.ground_new(rational(other)))

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, float):
            return NotImplemented
        try:
            other = self._coerce(other)
        except (CoercionFailed, TypeError, ValueError):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))

    def __neg__(self) -> "RatFrac":
        return RatFrac(-self.num, self.den)

    def __add__(self, other) -> "RatFrac":
        other = self._coerce(other)
        if self.den == other.den:
            return RatFrac(self.num + other.num, self.den)
        return RatFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFrac":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFrac":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFrac":
        other = self._coerce(other)
        return RatFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFrac":
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division of RatFrac by zero")
        return RatFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFrac":
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "RatFrac":
        if k < 0:
            return RatFrac(self.den ** (-k), self.num ** (-k))
        return RatFrac(self.num ** k, self.den ** k)

    def is_polynomial(self) -> bool:
        try:
            self.to_poly()
        except UncleanDivisionError:
            return False
        return True

    def to_poly(self, where: str = "rational function") -> MPoly:
        """Clears the denominator; raises when it does not divide the numerator."""
        if self.den == self.ring.one:
            return self.num
        return exact_quotient(self.num, self.den, where)

    def evaluate(self, bindings) -> "RatFrac":
        return RatFrac(evaluate(self.num, bindings), evaluate(self.den, bindings))

    def __repr__(self) -> str:
        if self.den == self.ring.one:
            return f"RatFrac({format_poly(self.num)})"
        return f"RatFrac(({format_poly(self.num)}) / ({format_poly(self.den)}))"


Entry = Union[RatFrac, MPoly, int]


def _as_ratfrac(entry: Entry, target: PolyRing) -> RatFrac:
    if isinstance(entry, RatFrac):
        return entry
    if isinstance(entry, PolyElement):
        return RatFrac(entry if entry.ring == target else entry.set_ring(target))
    return RatFrac(target.ground_new(rational(entry)))


def _ring_of(rows: Sequence[Sequence[Entry]]) -> PolyRing:
    for row in rows:
        for entry in row:
            if isinstance(entry, RatFrac):
                return entry.ring
            if isinstance(entry, PolyElement):
                return entry.ring
    return RING


def _clear_row(row: Sequence[RatFrac]) -> Tuple[List[MPoly], MPoly]:
    """Multiplies a row by the product of its distinct denominators."""
    target = row[0].ring
    dens: List[MPoly] = []
    for entry in row:
        if entry.den != target.one and entry.den not in dens:
            dens.append(entry.den)
    multiplier = target.one
    for d in dens:
        multiplier *= d
    cleared = []
    for entry in row:
        if entry.den == target.one:
            cleared.append(entry.num * multiplier)
        else:
            cleared.append(entry.num * exact_quotient(multiplier, entry.den, "row clearing"))
    return cleared, multiplier


def _permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def bareiss_eliminate(rows: List[List[MPoly]], ncols: int) -> Tuple[List[List[MPoly]], int]:
    """Forward fraction-free elimination on the first ``ncols`` columns.

    Rows may carry extra (augmented) columns, which are transformed too.

    Returns:
        Tuple (upper triangular rows, sign of the row permutation used)

    Raises:
        SingularSystemError: When a column has no nonzero pivot
    """
    m = [list(r) for r in rows]
    n = len(m)
    width = len(m[0]) if m else 0
    sign = 1
    prev = None
    for k in range(ncols):
        pivot_row = next((i for i in range(k, n) if m[i][k]), None)
        if pivot_row is None:
            raise SingularSystemError(determinant="0")
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k]
            for j in range(k + 1, width):
                elt = pivot * m[i][j] - factor * m[k][j]
                if prev is not None:
                    elt = exact_quotient(elt, prev, "Bareiss step")
                m[i][j] = elt
            m[i][k] = pivot.ring.zero
        prev = pivot
    return m, sign


def solve_linear_exact(
    matrix: Sequence[Sequence[Entry]],
    rhs: Sequence[Entry],
    row_order: Optional[Sequence[int]] = None,
) -> Tuple[Tuple[RatFrac, ...], RatFrac]:
    """Solves ``matrix @ values = rhs`` exactly.

    Args:
        matrix: Square matrix of RatFrac (or polynomial) entries
        rhs: Right-hand side vector
        row_order: Optional permutation giving the order in which rows are
            offered as pivots

    Returns:
        Tuple (solution vector, determinant of ``matrix``)

    Raises:
        SingularSystemError: When the determinant vanishes
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve_linear_exact expects a square system")
    target = _ring_of(list(matrix) + [list(rhs)])

    cleared_rows: List[List[MPoly]] = []
    multipliers: List[MPoly] = []
    for row, value in zip(matrix, rhs):
        entries = [_as_ratfrac(e, target) for e in row] + [_as_ratfrac(value, target)]
        cleared, multiplier = _clear_row(entries)
        cleared_rows.append(cleared)
        multipliers.append(multiplier)

    order = list(range(n)) if row_order is None else list(row_order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"row_order is not a permutation of 0..{n - 1}")
    permuted = [cleared_rows[i] for i in order]

    upper, sign = bareiss_eliminate(permuted, n)
    last = upper[n - 1][n - 1]
    if not last:
        raise SingularSystemError(determinant="0")

    # last * value_i is a polynomial by Cramer's rule, so each quotient is exact
    scaled: List[Optional[MPoly]] = [None] * n
    for i in range(n - 1, -1, -1):
        acc = last * upper[i][n]
        for j in range(i + 1, n):
            acc -= upper[i][j] * scaled[j]
        scaled[i] = exact_quotient(acc, upper[i][i], "back substitution")

    values = tuple(RatFrac(s, last) for s in scaled)
    total = target.one
    for mult in multipliers:
        total *= mult
    determinant = RatFrac(last * (sign * _permutation_sign(order)), total)
    return values, determinant


def cofactor_determinant(matrix: Sequence[Sequence[Entry]]) -> RatFrac:
    """Determinant by Laplace expansion along the first row."""
    n = len(matrix)
    target = _ring_of(matrix)
    entries = [[_as_ratfrac(e, target) for e in row] for row in matrix]
    if n == 0:
        return RatFrac(target.one)
    if n == 1:
        return entries[0][0]
    total = RatFrac(target.zero)
    for j in range(n):
        if not entries[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in entries[1:]]
        term = entries[0][j] * cofactor_determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def rank_profile(
    matrix: Sequence[Sequence[MPoly]],
    column_order: Optional[Sequence[int]] = None,
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Pivot rows and pivot columns of a polynomial matrix.

    Columns are scanned in ``column_order``; the first row (in the original
    row order) holding a nonzero entry after elimination becomes the pivot.

    Returns:
        Tuple (pivot row indices, pivot column indices), paired
    """
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    columns = list(range(ncols)) if column_order is None else list(column_order)
    remaining = list(range(nrows))
    pivot_rows: List[int] = []
    pivot_cols: List[int] = []
    prev = None
    for c in columns:
        r = next((i for i in remaining if rows[i][c]), None)
        if r is None:
            continue
        pivot = rows[r][c]
        remaining.remove(r)
        for i in remaining:
            factor = rows[i][c]
            for j in range(ncols):
                elt = pivot * rows[i][j] - factor * rows[r][j]
                if prev is not None:
                    elt = exact_quotient(elt, prev, "rank profile step")
                rows[i][j] = elt
        prev = pivot
        pivot_rows.append(r)
        pivot_cols.append(c)
    return tuple(pivot_rows), tuple(pivot_cols)


def parse_ratfrac(text: str, target: PolyRing = RING) -> RatFrac:
    """Parses a rational function such as ``1/b`` or ``(q - 4)/(b + 1)^2``."""
    expr = together(sympify(text.replace("^", "**"), locals=_locals(target)))
    num, den = fraction(expr)
    return RatFrac(parse_poly(str(num), target), parse_poly(str(den), target))


def _locals(target: PolyRing):
    names = {str(s): Symbol(str(s)) for s in target.symbols}
    if "b" in names:
        names.setdefault("nu", names["b"] + 1)
    return names


def content_form(value: RatFrac) -> Tuple[MPoly, MPoly]:
    """Numerator and denominator with integer coefficients and no common integer factor."""
    scale = integer_content(value.num) * integer_content(value.den)
    scale //= gcd(integer_content(value.num), integer_content(value.den))
    num, den = value.num * scale, value.den * scale
    common = reduce(gcd, (int(QQ.numer(c)) for c in list(num.values()) + list(den.values())), 0)
    if common > 1:
        num, den = num * QQ(1, common), den * QQ(1, common)
    return num, den


def format_value(value: Union[RatFrac, MPoly]) -> str:
    """Canonical text of a polynomial or rational function; inverse of :func:`parse_ratfrac`."""
    if isinstance(value, RatFrac):
        if value.den == value.ring.one:
            return format_poly(value.num)
        num, den = content_form(value)
        return f"({format_poly(num)})/({format_poly(den)})"
    return format_poly(value)
