"""
Specializations of solved generic states

Special cases (q = 4, q = 0, nu = 0, the self-dual line q = beta^2,
w = 1/beta) are obtained by substituting into the generic tables, never by
re-running the solver under the binding: some determinant factors vanish
there while the generic coefficients stay polynomial.
"""

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Mapping, Optional, Tuple, Union

from sympy.polys.rings import PolyElement

from algebra.linear import RatFrac, format_value, parse_ratfrac
from algebra.polys import (
    MPoly,
    RING,
    b,
    const,
    evaluate,
    format_poly,
    lift,
    substitute_fraction,
    symbols_used,
)
from algebra.series import Series
from core.errors import SpecializationError
from observability.logging import get_logger
from solver.identities import main_series
from solver.models import Model, ModelSpec
from solver.system import SolverState

logger = get_logger(__name__)

Binding = Union[int, str, MPoly, RatFrac, Tuple[MPoly, MPoly]]
Value = Union[MPoly, RatFrac]


def to_ratfrac(value: Binding) -> RatFrac:
    """Normalizes one binding value."""
    if isinstance(value, RatFrac):
        return value
    if isinstance(value, PolyElement):
        return RatFrac(lift(value, RING))
    if isinstance(value, tuple):
        num, den = value
        return RatFrac(lift(num, RING), lift(den, RING))
    if isinstance(value, str):
        return parse_ratfrac(value)
    return RatFrac(const(value))


def normalize_bindings(bindings: Mapping[str, Binding]) -> Dict[str, RatFrac]:
    known = {str(s) for s in RING.symbols}
    out = {}
    for name, value in bindings.items():
        if name == "nu":
            name, value = "b", to_ratfrac(value) - 1
        if name not in known:
            raise ValueError(f"cannot bind unknown symbol {name!r}")
        out[name] = to_ratfrac(value)
    return resolve_bindings(out)


def describe_bindings(bindings: Mapping[str, RatFrac]) -> str:
    return ",".join(f"{name}={format_value(value)}" for name, value in sorted(bindings.items()))


def parse_bindings(text: str) -> Dict[str, RatFrac]:
    """Parses ``q=4,w=1/b`` into bindings; ``nu=0`` binds ``b=-1``."""
    bindings: Dict[str, Binding] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise ValueError(f"binding {part!r} is not of the form name=value")
        name, value = (s.strip() for s in part.split("=", 1))
        bindings[name] = value
    return normalize_bindings(bindings)


def _substitute_all(value: MPoly, bindings: Mapping[str, RatFrac]) -> Value:
    if all(v.den == RING.one for v in bindings.values()):
        return evaluate(value, {k: v.num for k, v in bindings.items()})
    num, den = substitute_fraction(value, {k: (v.num, v.den) for k, v in bindings.items()})
    return RatFrac(num, den)


def substitute(value: Value, bindings: Mapping[str, RatFrac]) -> Value:
    """Applies bindings to a polynomial or rational function, simultaneously.

    Rational bindings turn the result into a RatFrac.
    """
    if isinstance(value, RatFrac):
        num = substitute(value.num, bindings)
        den = substitute(value.den, bindings)
        if not isinstance(num, RatFrac):
            num = RatFrac(num)
        return num / den
    return _substitute_all(value, bindings)


def resolve_bindings(bindings: Mapping[str, RatFrac]) -> Dict[str, RatFrac]:
    """Substitutes bound symbols inside the binding values until none is left.

    ``{b: 2, w: 1/b}`` resolves to ``{b: 2, w: 1/2}``.

    Raises:
        ValueError: When the bindings refer to each other in a cycle
    """
    resolved = dict(bindings)
    for _ in range(len(resolved) + 1):
        pending = [k for k, v in resolved.items()
                   if set(symbols_used(v.num) + symbols_used(v.den)) & resolved.keys()]
        if not pending:
            return resolved
        step = dict(resolved)
        for k in pending:
            value = substitute(resolved[k], resolved)
            step[k] = value if isinstance(value, RatFrac) else RatFrac(value)
        resolved = step
    raise ValueError(f"bindings refer to each other in a cycle: {sorted(pending)}")


def specialize_series(series: Series, bindings: Mapping[str, Binding]) -> Series:
    normalized = normalize_bindings(bindings)
    return series.map(lambda c: substitute(c, normalized))


def clear_series(series: Series, where: str = "specialized series") -> Series:
    """Series with every RatFrac coefficient cleared to a polynomial."""
    def clear(c, n):
        if isinstance(c, RatFrac):
            return c.to_poly(f"{where} at {series.var}^{n}")
        return c

    return Series(series.var, tuple(clear(c, n) for n, c in enumerate(series.coeffs)))


# Special cases where the substitution is legal although a determinant
# factor of S_i vanishes.
LICENSED: Dict[Model, List[Dict[str, RatFrac]]] = {
    Model.MAPS: [
        {"q": RatFrac(const(4))},
        {"q": RatFrac(b ** 2), "w": RatFrac(RING.one, b)},
    ],
    Model.TRIANGULATIONS: [
        {"q": RatFrac(const(4))},
        {"q": RatFrac(RING.zero)},
        {"b": RatFrac(const(-1))},
    ],
}


def vanishing_factors(spec: ModelSpec, bindings: Mapping[str, RatFrac]) -> List[MPoly]:
    return [f for f in spec.determinant_factors if not substitute(f, bindings)]


def check_licensed(spec: ModelSpec, bindings: Mapping[str, RatFrac]) -> None:
    """Rejects bindings that kill a determinant factor outside the licensed cases.

    Raises:
        SpecializationError: Naming the first unexplained vanishing factor
    """
    vanishing = vanishing_factors(spec, bindings)
    if not vanishing:
        return
    explained = set()
    for licensed in LICENSED[spec.model]:
        if all(k in bindings and bindings[k] == v for k, v in licensed.items()):
            explained.update(format_poly(f) for f in vanishing_factors(spec, licensed))
    for f in vanishing:
        if format_poly(f) not in explained:
            raise SpecializationError(format_poly(f), bindings=describe_bindings(bindings))


@dataclass(frozen=True)
class SpecializedState:
    """Coefficient series of a solved state after a substitution."""
    spec: ModelSpec
    order_done: int
    bindings: Dict[str, RatFrac]
    series: Dict[Tuple[str, int], Series]
    main: Series
    determinants: Tuple[Optional[RatFrac], ...] = field(default=())

    @property
    def size_var(self) -> str:
        return self.spec.size_var

    def coefficient_series(self, name: str, j: int) -> Series:
        try:
            return self.series[(name, j)]
        except KeyError:
            order = self.order_done - 1 if name == "R" else self.order_done
            return Series.zero(self.size_var, order)

    def table(self, name: str, s: int, j: int) -> Value:
        return self.coefficient_series(name, j)[s]

    def recentred_series(self, name: str, x0: Value, k: int) -> Series:
        """Coefficient of X^k once P, Q or R is written in X = x - x0."""
        top = {"P": self.spec.deg_p, "Q": 2, "R": self.spec.deg_r}[name]
        total = None
        for j in range(k, top + 1):
            weight = comb(j, k) * x0 ** (j - k)
            term = self.coefficient_series(name, j) * weight
            total = term if total is None else total + term
        return total


def specialize(state: SolverState, bindings: Mapping[str, Binding], check: bool = True) -> SpecializedState:
    """Substitutes bindings into every table and the main series.

    Args:
        state: Generic solved state
        bindings: Map from symbol (q, b, w; or nu) to a value
        check: Whether to enforce the determinant-factor licensing

    Raises:
        SpecializationError: When a determinant factor vanishes outside the
            licensed special cases
    """
    normalized = normalize_bindings(bindings)
    if check:
        check_licensed(state.spec, normalized)
    series = {}
    spec = state.spec
    widths = {"P": spec.deg_p + 1, "Q": 3, "R": spec.deg_r + 1}
    for name, width in widths.items():
        for j in range(width):
            generic = state.coefficient_series(name, j)
            series[(name, j)] = generic.map(lambda c: substitute(c, normalized))
    main = main_series(state).map(lambda c: substitute(c, normalized))
    dets = tuple(substitute(d, normalized) if d is not None else None for d in state.determinants)
    logger.debug(
        "Specialized solved state",
        event_type="specialization",
        model=spec.model.value,
        bindings=describe_bindings(normalized),
        order=state.order_done,
    )
    return SpecializedState(
        spec=spec,
        order_done=state.order_done,
        bindings=normalized,
        series=series,
        main=main,
        determinants=dets,
    )


def point_values(series: Series, point: Mapping[str, Binding]) -> List[Value]:
    """Coefficients of ``series`` evaluated at a parameter point."""
    normalized = normalize_bindings(point)
    return [substitute(c, normalized) for c in series.coeffs]

