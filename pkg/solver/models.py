"""Model definitions for the planar-map and triangulation differential systems"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from algebra.polys import MPoly, RING, b, const, nu, q, t, w, x


class Model(str, Enum):
    """Which family of maps a system describes"""
    MAPS = "maps"
    TRIANGULATIONS = "triangulations"


# (offset, x-power): offset 0 is the layer residual of order i, -1 of order
# i - 1; an x-power of None means the sum of all coefficients (x = 1).
Row = Tuple[int, Optional[int]]


@dataclass(frozen=True)
class ModelSpec:
    """Data fixing one differential system and its initial conditions.

    Attributes:
        model: Model family
        size_var: Size variable of the series (t for maps, w for triangulations)
        D: The polynomial D, of degree 2 in x and 1 in the size variable
        deg_p: Degree of P in x (its leading coefficient is 1)
        q_leading: Coefficient of x^2 in Q, constant in the size variable
        r_leading: Fixed coefficient of x^2 in R, when R has degree 2
        p_initial: P at size 0
        q_initial: Q at size 0
        rows: Equations forming the system S_i
        main_name: Name of the extracted main series
        determinant_factors: Factors of the determinant of S_i besides i
    """
    model: Model
    size_var: str
    D: MPoly
    deg_p: int
    deg_r: int
    q_leading: MPoly
    r_leading: Optional[MPoly]
    p_initial: MPoly
    q_initial: MPoly
    rows: Tuple[Row, ...]
    main_name: str
    determinant_factors: Tuple[MPoly, ...]
    known_first_layer: Tuple[MPoly, ...]

    @property
    def n_unknowns(self) -> int:
        # P_{i,0..deg_p-1}, Q_{i,0..1}, R_{i-1,0..1}
        return self.deg_p + 4

    @property
    def D_layers(self) -> Tuple[MPoly, MPoly]:
        v = RING.gens[_index(self.size_var)]
        return (self.D.coeff_wrt(v, 0), self.D.coeff_wrt(v, 1))

    def unknown_names(self) -> Tuple[str, ...]:
        names = [f"P[{j}]" for j in range(self.deg_p)]
        names += ["Q[0]", "Q[1]", "R[0]", "R[1]"]
        return tuple(names)

    def determinant_formula(self, i: int) -> MPoly:
        """Closed-form determinant of S_i for i > 1."""
        if self.model is Model.MAPS:
            return 256 * i ** 6 * q ** 3 * b ** 7 * w * (q - 4) * (q * nu + b ** 2) ** 2
        return const(i ** 5, 2) * q ** 3 * b ** 7 * (q - 4) * (b + 1) ** 4 * (b - 1) ** 3 * (4 * b ** 2 - q)


def _index(name: str) -> int:
    return [str(s) for s in RING.symbols].index(name)


MAPS = ModelSpec(
    model=Model.MAPS,
    size_var="t",
    D=(q * nu + b ** 2) * x ** 2 - q * (nu + 1) * x + b * t * (q - 4) * (w * q + b) + q,
    deg_p=4,
    deg_r=2,
    q_leading=RING.one,
    r_leading=nu + 1 - w * (q + 2 * b),
    p_initial=x ** 2 * (x - 1) ** 2,
    q_initial=x * (x - 1),
    rows=((0, None), (0, 0)) + tuple((-1, j) for j in range(2, 8)),
    main_name="M1tilde",
    determinant_factors=(q, b, w, q - 4, q * nu + b ** 2),
    known_first_layer=(
        const(-4),
        8 - 2 * w * q,
        4 * w * (q - b) - 2 * b - 4,
        2 * b - 2 * w * q,
        w * q + 2 * b + 4,
        4 * w * b - b + w * q - 4,
        const(2),
        w * q - b - 4,
    ),
)

TRIANGULATIONS = ModelSpec(
    model=Model.TRIANGULATIONS,
    size_var="w",
    D=q * nu ** 2 * x ** 2 + b * (4 * b + q) * x + q * b * nu * (q - 4) * w + b ** 2,
    deg_p=3,
    deg_r=1,
    q_leading=2 * nu,
    r_leading=None,
    p_initial=x ** 3 + const(1, 4) * x ** 2,
    q_initial=2 * nu * x ** 2 + x,
    rows=((0, 0),) + tuple((-1, j) for j in range(1, 7)),
    main_name="T1",
    determinant_factors=(q, b, q - 4, b + 1, b - 1, 4 * b ** 2 - q),
    known_first_layer=(
        -b,
        b ** 2 + const(1, 2) * b * q - 4 * b,
        4 * b ** 2 + 2 * b * q - 2 * q,
        8 * b + 2 * q - 2 * b ** 2 + b * q,
        4 * b ** 3 + 2 * q * b ** 2 + 4 * b ** 2 - 2 * q,
        -2 * b,
        b * q - 8 * b - q,
    ),
)

SPECS: Dict[str, ModelSpec] = {
    Model.MAPS.value: MAPS,
    Model.TRIANGULATIONS.value: TRIANGULATIONS,
}


def get_spec(model) -> ModelSpec:
    """Looks up a model by name or enum member."""
    key = model.value if isinstance(model, Model) else str(model)
    try:
        return SPECS[key]
    except KeyError:
        raise ValueError(f"unknown model {model!r}; expected one of {sorted(SPECS)}")
