"""
Exact multivariate polynomials over the rationals

Every parameter polynomial lives in one sparse sympy ring over QQ with the
generators q, b, w, t, x, y. The Potts weight nu is never a generator: it is
carried as b + 1, so equal polynomials always have equal representations.
"""

import math
import re
from typing import Mapping, Optional, Sequence, Tuple, Union

from sympy import Symbol, sympify
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing, ring

from core.errors import UncleanDivisionError

SYMBOLS: Tuple[str, ...] = ("q", "b", "w", "t", "x", "y")

RING, q, b, w, t, x, y = ring(",".join(SYMBOLS), QQ)

MPoly = PolyElement
Number = Union[int, str, object]

nu = b + 1


def rational(value: Number, den: int = 1):
    """Converts an int, a "p/q" string or a sympy number to an element of QQ."""
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num_text, den_text = text.split("/", 1)
            return QQ(int(num_text), int(den_text) * den)
        return QQ(int(text), den)
    if isinstance(value, int):
        return QQ(value, den)
    converted = QQ.convert(value)
    return converted / den if den != 1 else converted


def const(value: Number, den: int = 1, target: PolyRing = RING) -> MPoly:
    """Constant polynomial."""
    return target.ground_new(rational(value, den))


def gen(name: str, target: PolyRing = RING) -> MPoly:
    """Generator of ``target`` by name."""
    names = [str(s) for s in target.symbols]
    try:
        return target.gens[names.index(name)]
    except ValueError:
        raise KeyError(f"unknown symbol {name!r} in ring {names}")


def mpoly_mul(a: MPoly, b: MPoly) -> MPoly:
    """Exact product; sympy prunes zero terms on construction."""
    return a * b


def mpoly_derivative(p: MPoly, s: str) -> MPoly:
    """Formal partial derivative with respect to the symbol named ``s``."""
    return p.diff(gen(s, p.ring))


def lift(p: MPoly, target: PolyRing) -> MPoly:
    """Moves ``p`` into ``target`` (a ring whose symbols include those used by ``p``)."""
    if p.ring == target:
        return p
    return p.set_ring(target)


def degree_in(p: MPoly, name: str) -> int:
    """Degree in one generator; -1 for the zero polynomial."""
    if not p:
        return -1
    return p.degree(gen(name, p.ring))


def coeff_in(p: MPoly, name: str, k: int) -> MPoly:
    """Coefficient of ``name**k``, as a polynomial in the remaining symbols."""
    return p.coeff_wrt(gen(name, p.ring), k)


def coeffs_in(p: MPoly, name: str, length: Optional[int] = None) -> Tuple[MPoly, ...]:
    """All coefficients of ``p`` seen as a univariate polynomial in ``name``."""
    top = degree_in(p, name)
    length = top + 1 if length is None else length
    return tuple(coeff_in(p, name, k) for k in range(length))


def from_coeffs(coeffs: Sequence[MPoly], name: str, target: PolyRing = RING) -> MPoly:
    """Inverse of :func:`coeffs_in`."""
    var = gen(name, target)
    result = target.zero
    power = target.one
    for c in coeffs:
        if c:
            result += lift(c, target) * power
        power *= var
    return result


def exact_quotient(p: MPoly, d: MPoly, where: str = "polynomial quotient") -> MPoly:
    """Exact quotient ``p / d``; raises when the division leaves a remainder."""
    if not d:
        raise UncleanDivisionError(f"{where}: division by zero")
    try:
        return p.exquo(d)
    except ExactQuotientFailed:
        raise UncleanDivisionError(where)


def evaluate(p: MPoly, bindings: Mapping[str, Union[Number, MPoly]]) -> MPoly:
    """Substitutes constants or polynomials for symbols, simultaneously.

    The result stays in the ring of ``p``.
    """
    if not bindings:
        return p
    replacements = []
    for name, value in bindings.items():
        g = gen(name, p.ring)
        if isinstance(value, PolyElement):
            replacements.append((g, lift(value, p.ring)))
        else:
            replacements.append((g, p.ring.ground_new(rational(value))))
    return p.compose(replacements)


def substitute_fraction(
    p: MPoly,
    bindings: Mapping[str, Tuple[MPoly, MPoly]],
) -> Tuple[MPoly, MPoly]:
    """Substitutes rational functions ``num/den`` for symbols, simultaneously.

    Each symbol ``s`` of degree ``d_s`` in ``p`` is replaced by ``num_s/den_s``
    after multiplying through by ``den_s**d_s``, so the returned pair
    ``(numerator, denominator)`` is polynomial. Symbols appearing inside the
    values are left alone.

    Args:
        p: Polynomial to substitute into
        bindings: Map from symbol name to (numerator, denominator)

    Returns:
        Tuple (numerator, denominator) of the substituted value
    """
    target = p.ring
    names = [str(s) for s in target.symbols]
    denominator = target.one
    powers = {}
    for name, (num, den) in bindings.items():
        top = degree_in(p, name)
        if top <= 0:
            continue
        num, den = lift(num, target), lift(den, target)
        powers[names.index(name)] = [num ** k * den ** (top - k) for k in range(top + 1)]
        denominator *= den ** top
    if not powers:
        return p, denominator
    numerator = target.zero
    for monom, coeff in p.items():
        rest = list(monom)
        term = target.one
        for i, table in powers.items():
            term *= table[monom[i]]
            rest[i] = 0
        numerator += target.from_dict({tuple(rest): coeff}) * term
    return numerator, denominator


def format_poly(p: MPoly) -> str:
    """Canonical textual form.

    Terms are sorted by descending lexicographic exponent vector over the
    ring's symbol order; coefficients are written as integers or ``p/q``.
    """
    if not p:
        return "0"
    names = [str(s) for s in p.ring.symbols]
    pieces = []
    for monom, coeff in sorted(p.items(), key=lambda item: item[0], reverse=True):
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        num, den = int(QQ.numer(coeff)), int(QQ.denom(coeff))
        sign = "-" if num < 0 else "+"
        magnitude = abs(num)
        scalar = f"{magnitude}/{den}" if den != 1 else str(magnitude)
        if factors:
            body = "*".join(factors) if scalar == "1" else scalar + "*" + "*".join(factors)
        else:
            body = scalar
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_CARET = re.compile(r"\^")


def parse_poly(text: str, target: PolyRing = RING) -> MPoly:
    """Parses a polynomial written with ``^`` or ``**`` powers.

    Accepts the canonical form produced by :func:`format_poly` as well as
    hand-written expressions such as ``(q*(b+1) + b^2)*x^2``. The symbol
    ``nu`` is accepted as an alias for ``b + 1``.
    """
    expr_text = _CARET.sub("**", text)
    local_names = {str(s): Symbol(str(s)) for s in target.symbols}
    if "nu" not in local_names and "b" in local_names:
        local_names["nu"] = local_names["b"] + 1
    expr = sympify(expr_text, locals=local_names)
    return target.from_expr(expr)


def is_constant(p: MPoly) -> bool:
    return all(not any(monom) for monom in p.keys())


def ground_value(p: MPoly):
    """Rational value of a constant polynomial."""
    if not is_constant(p):
        raise ValueError(f"not a constant: {format_poly(p)}")
    return p.coeff(1) if p else QQ.zero


def integer_content(p: MPoly) -> int:
    """Least common denominator of the coefficients of ``p``."""
    den = 1
    for coeff in p.values():
        d = int(QQ.denom(coeff))
        den = den * d // math.gcd(den, d)
    return den


def symbols_used(p: MPoly) -> Tuple[str, ...]:
    names = [str(s) for s in p.ring.symbols]
    used = set()
    for monom in p.keys():
        for name, e in zip(names, monom):
            if e:
                used.add(name)
    return tuple(n for n in names if n in used)
