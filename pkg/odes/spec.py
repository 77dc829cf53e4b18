"""
Transcribed differential equations and their residuals

A fixture file holds one differential polynomial (or a pair of them) in
placeholders standing for a series and its derivatives: X, Y, Z, T for
S, S', S'', S''' by default, A and B for an auxiliary series and its
derivative. Coefficients are polynomials in q, b, w, t written with the
aliases nu = b + 1 and beta = b, plus any aliases the fixture defines.
"""

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Symbol, SympifyError, sympify
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyRing, ring

from algebra.polys import MPoly, RING, SYMBOLS
from algebra.series import Series
from core.errors import FixtureError
from observability.logging import get_logger

logger = get_logger(__name__)

FIXTURE_DIR = Path(__file__).parent / "fixtures"

PLACEHOLDERS: Tuple[str, ...] = ("X", "Y", "Z", "T", "A", "B")

_BASE_ALIASES = (("beta", "b"), ("nu", "b + 1"))


@dataclass(frozen=True)
class OdeSpec:
    """A transcribed differential polynomial.

    Attributes:
        name: Fixture name
        size_var: Variable the series are expanded in
        placeholders: Map from placeholder to (series name, derivative order)
        equations: One polynomial per equation, in ``ring``
        ring: Placeholders followed by the parameter symbols
        order: Highest derivative order, as recorded in the fixture
        degree: Total degree in the placeholders, as recorded in the fixture
        terms: Monomials in the placeholders per equation, as recorded in the fixture
        series: Note on what each named series stands for
    """
    name: str
    size_var: str
    placeholders: Dict[str, Tuple[str, int]]
    equations: Tuple[MPoly, ...]
    ring: PolyRing
    order: int
    degree: int
    terms: Tuple[int, ...] = ()
    series: Dict[str, str] = field(default_factory=dict)
    description: str = ""

    @property
    def polynomial(self) -> MPoly:
        return self.equations[0]

    @property
    def main(self) -> str:
        """Name of the series X stands for."""
        return self.placeholders["X"][0]

    @property
    def placeholder_names(self) -> Tuple[str, ...]:
        return tuple(str(s) for s in self.ring.symbols[: len(self.placeholders)])

    def placeholder_degree(self, equation: Optional[int] = None) -> int:
        """Total degree in the placeholders (over all equations by default)."""
        polys = self.equations if equation is None else (self.equations[equation],)
        n = len(self.placeholders)
        return max((sum(monom[:n]) for p in polys for monom in p.keys()), default=0)

    def derivative_order(self, equation: Optional[int] = None) -> int:
        """Highest derivative order actually used."""
        polys = self.equations if equation is None else (self.equations[equation],)
        used = _used_placeholders(self, polys)
        return max((self.placeholders[ph][1] for ph in used), default=0)

    def term_count(self, equation: int = 0) -> int:
        return len(self.equations[equation])

    def placeholder_terms(self, equation: int = 0) -> int:
        """Distinct monomials in the placeholders, parameters collected into coefficients."""
        n = len(self.placeholders)
        return len({monom[:n] for monom in self.equations[equation].keys()})


def _used_placeholders(spec: OdeSpec, polys: Sequence[MPoly]) -> List[str]:
    names = spec.placeholder_names
    used = set()
    for p in polys:
        for monom in p.keys():
            for name, e in zip(names, monom):
                if e:
                    used.add(name)
    return [n for n in names if n in used]


def _ode_ring(placeholders: Sequence[str]) -> PolyRing:
    return ring(",".join(list(placeholders) + list(SYMBOLS)), QQ)[0]


def _parse(text: str, target: PolyRing, aliases: Sequence[Sequence[str]], where: str) -> MPoly:
    local_names = {str(s): Symbol(str(s)) for s in target.symbols}
    try:
        for alias, definition in list(_BASE_ALIASES) + [tuple(a) for a in aliases]:
            local_names[alias] = sympify(definition.replace("^", "**"), locals=local_names)
        expr = sympify(text.replace("^", "**"), locals=local_names)
        return target.from_expr(expr)
    except (SympifyError, ValueError, TypeError) as e:
        raise FixtureError(f"{where}: cannot parse polynomial ({e})")


def parse_fixture(data: Mapping, where: str = "fixture") -> OdeSpec:
    """Builds an OdeSpec from the decoded content of a fixture file.

    Raises:
        FixtureError: On missing fields, unknown placeholders or text that is
            not a polynomial
    """
    try:
        name = data["name"]
        size_var = data["size_var"]
        raw_placeholders = data["placeholders"]
        order = int(data["order"])
        degree = int(data["degree"])
        terms = tuple(int(n) for n in data.get("terms", ()))
    except (KeyError, TypeError, ValueError) as e:
        raise FixtureError(f"{where}: missing or malformed field {e}")

    if size_var not in SYMBOLS:
        raise FixtureError(f"{where}: unknown size variable {size_var!r}")
    unknown = [ph for ph in raw_placeholders if ph not in PLACEHOLDERS]
    if unknown:
        raise FixtureError(f"{where}: unknown placeholders {unknown}")
    if "X" not in raw_placeholders:
        raise FixtureError(f"{where}: placeholder X is required")

    ordered = [ph for ph in PLACEHOLDERS if ph in raw_placeholders]
    placeholders = {}
    for ph in ordered:
        series_name, k = raw_placeholders[ph]
        placeholders[ph] = (str(series_name), int(k))

    texts = data.get("equations") or ([data["polynomial"]] if "polynomial" in data else [])
    if not texts:
        raise FixtureError(f"{where}: no polynomial given")

    target = _ode_ring(ordered)
    aliases = data.get("aliases", [])
    equations = tuple(_parse(text, target, aliases, f"{where} equation {k}")
                      for k, text in enumerate(texts))
    if terms and len(terms) != len(equations):
        raise FixtureError(f"{where}: {len(terms)} term counts for {len(equations)} equations")

    return OdeSpec(
        name=name,
        size_var=size_var,
        placeholders=placeholders,
        equations=equations,
        ring=target,
        order=order,
        degree=degree,
        terms=terms,
        series=dict(data.get("series", {})),
        description=data.get("description", ""),
    )


def check_metadata(spec: OdeSpec) -> List[str]:
    """Disagreements between a parsed fixture and its recorded order, degree and term counts."""
    problems = []
    found_order = spec.derivative_order()
    found_degree = spec.placeholder_degree()
    if found_order != spec.order:
        problems.append(f"order {found_order}, recorded {spec.order}")
    if found_degree != spec.degree:
        problems.append(f"degree {found_degree}, recorded {spec.degree}")
    for k, recorded in enumerate(spec.terms):
        found_terms = spec.placeholder_terms(k)
        if found_terms != recorded:
            problems.append(f"equation {k} has {found_terms} terms, recorded {recorded}")
    for k, p in enumerate(spec.equations):
        if not p:
            problems.append(f"equation {k} is identically zero")
    return problems


def load_fixture_file(path: Union[str, Path], validate: bool = True) -> OdeSpec:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise FixtureError(f"{path.name}: {e}")
    spec = parse_fixture(data, where=path.name)
    if validate:
        problems = check_metadata(spec)
        if problems:
            raise FixtureError(f"{path.name}: " + "; ".join(problems))
    logger.debug("Loaded equation fixture", event_type="fixture_loaded",
                 fixture=spec.name, terms=[spec.term_count(k) for k in range(len(spec.equations))])
    return spec


@lru_cache(maxsize=None)
def load_fixture(name: str) -> OdeSpec:
    """Loads (once) a fixture shipped in ``odes/fixtures``."""
    path = FIXTURE_DIR / f"{name}.json"
    if not path.exists():
        raise FixtureError(f"no equation fixture named {name!r}")
    return load_fixture_file(path)


def available_fixtures() -> List[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json"))


def _grouped(spec: OdeSpec, poly: MPoly) -> Dict[Tuple[int, ...], MPoly]:
    """Splits ``poly`` by placeholder monomial; values lie in the parameter ring."""
    n = len(spec.placeholders)
    groups: Dict[Tuple[int, ...], MPoly] = {}
    for monom, coeff in poly.items():
        key, rest = monom[:n], monom[n:]
        groups[key] = groups.get(key, RING.zero) + RING.from_dict({rest: coeff})
    return groups


def ode_residual(
    spec: OdeSpec,
    series: Union[Series, Mapping[str, Series]],
    equation: int = 0,
) -> Series:
    """Substitutes series and their derivatives into one equation of ``spec``.

    Args:
        spec: Transcribed equation
        series: The series X stands for, or a map from series name to series
            when the equation involves several
        equation: Index of the equation for fixtures holding a pair

    Returns:
        The residual, known to the smallest order among the derivatives used

    Raises:
        FixtureError: When a series the equation needs is not given
    """
    named = {spec.main: series} if isinstance(series, Series) else dict(series)
    poly = spec.equations[equation]
    groups = _grouped(spec, poly)
    names = spec.placeholder_names

    values: Dict[str, Series] = {}
    for ph in _used_placeholders(spec, (poly,)):
        series_name, k = spec.placeholders[ph]
        if series_name not in named:
            raise FixtureError(f"{spec.name}: series {series_name!r} is required")
        s = named[series_name]
        if s.var != spec.size_var:
            raise FixtureError(f"{spec.name}: expected a series in {spec.size_var}, got {s.var}")
        for _ in range(k):
            s = s.derivative()
        values[ph] = s
    if not values:
        raise FixtureError(f"{spec.name}: equation {equation} uses no placeholder")
    order = min(v.order for v in values.values())
    values = {ph: v.truncate(order) for ph, v in values.items()}

    powers: Dict[Tuple[str, int], Series] = {}

    def power(ph: str, e: int) -> Series:
        if (ph, e) not in powers:
            powers[(ph, e)] = values[ph] if e == 1 else power(ph, e - 1) * values[ph]
        return powers[(ph, e)]

    total = Series.zero(spec.size_var, order)
    for key, coeff in sorted(groups.items()):
        term = Series.from_poly(coeff, spec.size_var, order)
        for ph, e in zip(names, key):
            if e:
                term = term * power(ph, e)
        total = total + term
    return total
