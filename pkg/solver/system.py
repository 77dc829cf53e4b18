"""
Order-by-order solution of the polynomial differential systems

The system 2Q'PD - QP'D - 2QPD' = 2R_x PD - R P_x D - 2R P D_x (primes in
the size variable, subscripts in x) is solved one size order at a time: the
unknown coefficients of P and Q at order i and of R at order i - 1 satisfy
the system S_i built from selected coefficients of the residual.
"""

import time
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyRing, ring

from algebra.linear import RatFrac, rank_profile, solve_linear_exact
from algebra.polys import (
    MPoly,
    RING,
    SYMBOLS,
    coeff_in,
    degree_in,
    evaluate,
    exact_quotient,
    format_poly,
    gen,
    lift,
)
from algebra.series import Series
from core.errors import PottsError, SingularSystemError, UncleanDivisionError
from observability.logging import get_logger
from observability.metrics import record_order_solved, record_series_order
from observability.tracing import trace_span
from solver.models import ModelSpec, get_spec

logger = get_logger(__name__)


@dataclass(frozen=True)
class SolverState:
    """Coefficient layers of P, Q and R solved through ``order_done``.

    ``P[s]`` is the polynomial in x formed by the coefficients of size^s;
    layers of R are known through ``order_done - 1``.
    """
    spec: ModelSpec
    order_done: int
    P: Tuple[MPoly, ...]
    Q: Tuple[MPoly, ...]
    R: Tuple[MPoly, ...]
    determinants: Tuple[Optional[RatFrac], ...] = ()
    main: Optional[Series] = None

    @property
    def size_var(self) -> str:
        return self.spec.size_var

    def table(self, name: str, s: int, j: int) -> MPoly:
        """Coefficient of size^s x^j in P, Q or R."""
        layers = self._layers(name)
        if s >= len(layers):
            raise IndexError(f"{name} known through order {len(layers) - 1}, asked {s}")
        return coeff_in(layers[s], "x", j)

    def coefficient_series(self, name: str, j: int) -> Series:
        """The series P_j, Q_j or R_j in the size variable."""
        layers = self._layers(name)
        return Series(self.size_var, tuple(coeff_in(layer, "x", j) for layer in layers))

    def layer_values(self, s: int) -> Tuple[MPoly, ...]:
        """The unknowns C_s, in the order P_{s,0..}, Q_{s,0..1}, R_{s-1,0..1}."""
        values = [self.table("P", s, j) for j in range(self.spec.deg_p)]
        values += [self.table("Q", s, 0), self.table("Q", s, 1)]
        values += [self.table("R", s - 1, 0), self.table("R", s - 1, 1)]
        return tuple(values)

    def _layers(self, name: str) -> Tuple[MPoly, ...]:
        try:
            return {"P": self.P, "Q": self.Q, "R": self.R}[name]
        except KeyError:
            raise KeyError(f"unknown table {name!r}")


def initial_state(spec: ModelSpec) -> SolverState:
    """State holding only the size-0 initial conditions."""
    return SolverState(spec=spec, order_done=0, P=(spec.p_initial,), Q=(spec.q_initial,), R=())


def _fixed_r_layer(spec: ModelSpec, s: int, target: PolyRing = RING) -> MPoly:
    """Part of the R layer s fixed in advance (the constant leading term)."""
    if s == 0 and spec.r_leading is not None:
        return lift(spec.r_leading * gen("x") ** spec.deg_r, target)
    return target.zero


def layer_residual(
    P: Sequence[MPoly],
    Q: Sequence[MPoly],
    R: Sequence[MPoly],
    D: Sequence[MPoly],
    n: int,
) -> MPoly:
    """Coefficient of size^n of the system residual, as a polynomial in x.

    Missing layers count as zero. All inputs share one ring.
    """
    target = D[0].ring
    xg = gen("x", target)
    zero = target.zero

    def at(seq, k):
        return seq[k] if 0 <= k < len(seq) else zero

    def pairs(s):
        for i3 in range(min(len(D) - 1, s) + 1):
            p = at(P, s - i3)
            d = D[i3]
            if p and d:
                yield s - i3, i3, p, d

    def a_term(s):
        return sum((p * d for _, _, p, d in pairs(s)), zero)

    def b_term(s):
        return sum(((i2 + 2 * i3) * p * d for i2, i3, p, d in pairs(s)), zero)

    def c_term(s):
        return sum((p.diff(xg) * d + 2 * p * d.diff(xg) for _, _, p, d in pairs(s)), zero)

    res = zero
    for i1 in range(n + 2):
        qk = at(Q, i1)
        if qk:
            res += qk * (2 * i1 * a_term(n + 1 - i1) - b_term(n + 1 - i1))
    for i1 in range(n + 1):
        rk = at(R, i1)
        if rk:
            res -= 2 * rk.diff(xg) * a_term(n - i1) - rk * c_term(n - i1)
    return res


def system_residual(state: SolverState, up_to: Optional[int] = None) -> Dict[int, Series]:
    """Residual of the differential system, coefficient by coefficient in x.

    Args:
        state: Solved state
        up_to: Number of size orders to check (default: ``state.order_done``)

    Returns:
        Map from x-power to a Series of order ``up_to - 1``; all zero when the
        system holds
    """
    up_to = state.order_done if up_to is None else up_to
    if up_to > state.order_done or up_to < 1:
        raise ValueError(f"up_to must lie in 1..{state.order_done}")
    D = state.spec.D_layers
    layers = [layer_residual(state.P, state.Q, state.R, D, n) for n in range(up_to)]
    top = max((degree_in(layer, "x") for layer in layers), default=0)
    return {
        j: Series(state.size_var, tuple(coeff_in(layer, "x", j) for layer in layers))
        for j in range(max(top, 0) + 1)
    }


def residual_is_zero(residual: Dict[int, Series]) -> bool:
    return all(series.is_zero() for series in residual.values())


def _row_value(res_by_offset: Dict[int, MPoly], row) -> MPoly:
    offset, power = row
    res = res_by_offset[offset]
    if power is None:
        return evaluate(res, {"x": 1})
    return coeff_in(res, "x", power)


def _unknown_ring(m: int) -> Tuple[PolyRing, Tuple[MPoly, ...]]:
    names = [f"u{k}" for k in range(m)] + list(SYMBOLS)
    aug, *gens = ring(",".join(names), QQ)
    return aug, tuple(gens[:m])


def _unknown_layers(spec: ModelSpec, us: Sequence[MPoly], target: PolyRing):
    xg = gen("x", target)
    deg_p = spec.deg_p
    p_layer = sum((us[j] * xg ** j for j in range(deg_p)), target.zero)
    q_layer = us[deg_p] + us[deg_p + 1] * xg
    r_layer = us[deg_p + 2] + us[deg_p + 3] * xg
    return p_layer, q_layer, r_layer


def _split_by_unknowns(f: MPoly, m: int) -> Dict[Tuple[int, ...], MPoly]:
    """Groups an augmented polynomial by its monomial in the unknowns."""
    parts: Dict[Tuple[int, ...], Dict] = {}
    for monom, coeff in f.items():
        parts.setdefault(monom[:m], {})[monom[m:]] = coeff
    return {key: RING.from_dict(terms) for key, terms in parts.items()}


def build_system(state: SolverState, i: int):
    """Rows of S_i as augmented polynomials in the unknowns u_0.. of C_i.

    Returns:
        Tuple (augmented ring, unknown generators, rows)
    """
    spec = state.spec
    m = spec.n_unknowns
    D = spec.D_layers

    known_p = list(state.P[:i])
    known_q = list(state.Q[:i])
    known_r = list(state.R[: i - 1]) + [_fixed_r_layer(spec, i - 1)]
    offsets = sorted({row[0] for row in spec.rows})
    known = {off: layer_residual(known_p, known_q, known_r, D, i + off) for off in offsets}

    # The unknowns of C_i only meet layers 0 and 1 of the known data.
    aug, us = _unknown_ring(m)
    D_aug = tuple(lift(d, aug) for d in D)

    def low(seq, length):
        return [lift(seq[k], aug) if k <= 1 and k < len(seq) else aug.zero for k in range(length)]

    p_low, q_low, r_low = low(known_p, i + 1), low(known_q, i + 1), low(known_r, i)
    p_u, q_u, r_u = _unknown_layers(spec, us, aug)
    p_full, q_full, r_full = list(p_low), list(q_low), list(r_low)
    p_full[i] += p_u
    q_full[i] += q_u
    r_full[i - 1] += r_u

    diff = {
        off: layer_residual(p_full, q_full, r_full, D_aug, i + off)
        - layer_residual(p_low, q_low, r_low, D_aug, i + off)
        for off in offsets
    }
    rows = []
    for row in spec.rows:
        rows.append(lift(_row_value(known, row), aug) + _row_value(diff, row))
    return aug, us, rows


def _linear_parts(rows: Sequence[MPoly], m: int):
    """Constant terms, coefficient matrix and nonlinear flag of the rows."""
    constants, matrix, nonlinear = [], [], []
    for f in rows:
        parts = _split_by_unknowns(f, m)
        constants.append(parts.get((0,) * m, RING.zero))
        row = []
        for k in range(m):
            key = tuple(1 if j == k else 0 for j in range(m))
            row.append(parts.get(key, RING.zero))
        matrix.append(row)
        nonlinear.append(any(sum(key) > 1 for key in parts))
    return constants, matrix, nonlinear


def solve_linear_layer(state: SolverState, i: int, row_order: Optional[Sequence[int]] = None):
    """Solves S_i when it is linear.

    Returns:
        Tuple (values of C_i, determinant)

    Raises:
        SingularSystemError: vanishing determinant
        UncleanDivisionError: a solution that is not a polynomial
    """
    m = state.spec.n_unknowns
    _, _, rows = build_system(state, i)
    constants, matrix, nonlinear = _linear_parts(rows, m)
    if any(nonlinear):
        raise PottsError(f"system S_{i} is not linear")
    try:
        values, det = solve_linear_exact(matrix, [-c for c in constants], row_order=row_order)
    except SingularSystemError:
        raise SingularSystemError(order=i, model=state.spec.model.value)
    names = state.spec.unknown_names()
    polys = tuple(v.to_poly(f"{names[k]} at order {i}") for k, v in enumerate(values))
    return polys, det


def append_layer(state: SolverState, i: int, values: Sequence[MPoly], det: Optional[RatFrac]) -> SolverState:
    """New state with C_i appended."""
    spec = state.spec
    p_layer, q_layer, r_layer = _unknown_layers(spec, values, RING)
    r_layer = r_layer + _fixed_r_layer(spec, i - 1)
    return replace(
        state,
        order_done=i,
        P=state.P + (p_layer,),
        Q=state.Q + (q_layer,),
        R=state.R + (r_layer,),
        determinants=state.determinants + (det,),
        main=None,
    )


def _linear_roots(f: MPoly, var: str) -> List[MPoly]:
    """Polynomial roots in ``var`` of the linear factors of ``f``."""
    if not f:
        return []
    roots = []
    _, factors = f.factor_list()
    v = gen(var, f.ring)
    for factor, _mult in factors:
        if factor.degree(v) != 1:
            continue
        a = factor.coeff_wrt(v, 1)
        c = factor.coeff_wrt(v, 0)
        try:
            root = exact_quotient(-c, a, "branch root")
        except UncleanDivisionError:
            continue
        if degree_in(root, var) <= 0 and root not in roots:
            roots.append(root)
    return roots


def _branch_candidates(state: SolverState, i: int) -> List[Tuple[MPoly, ...]]:
    """All polynomial solutions of a quadratic S_i (the first order)."""
    spec = state.spec
    m = spec.n_unknowns
    aug, us, rows = build_system(state, i)
    constants, matrix, nonlinear = _linear_parts(rows, m)

    lin_idx = [k for k in range(len(rows)) if not nonlinear[k]]
    non_idx = [k for k in range(len(rows)) if nonlinear[k]]
    lin_matrix = [matrix[k] for k in lin_idx]
    piv_rows, piv_cols = rank_profile(lin_matrix)
    free = [c for c in range(m) if c not in piv_cols]
    logger.debug(
        f"Order {i} branch search",
        event_type="branch_search",
        model=spec.model.value,
        pivots=list(piv_cols),
        free=free,
    )

    # pivots as affine functions of the free unknowns, over a common denominator
    sub_matrix = [[lift(lin_matrix[r][c], aug) for c in piv_cols] for r in piv_rows]
    sub_rhs = []
    for r in piv_rows:
        k = lin_idx[r]
        value = -lift(constants[k], aug)
        for c in free:
            value -= lift(matrix[k][c], aug) * us[c]
        sub_rhs.append(value)
    values, _ = solve_linear_exact(sub_matrix, sub_rhs)
    common = next((v.den for v in values if v), aug.one)
    numerators = [v.num if v.den == common else v.num * exact_quotient(common, v.den) for v in values]

    top = 2
    replacements = [(us[c], numerators[k]) for k, c in enumerate(piv_cols)]
    replacements += [(us[c], common * us[c]) for c in free]
    reduced = []
    for k in non_idx:
        parts = _split_by_unknowns(rows[k], m)
        total = aug.zero
        for key, coeff in parts.items():
            d = sum(key)
            monom = aug.one
            for j, e in enumerate(key):
                if e:
                    monom *= us[j] ** e
            if d > top:
                raise PottsError(f"system S_{i} has degree {d} in the unknowns")
            total += lift(coeff, aug) * monom * common ** (top - d)
        reduced.append(total.compose(replacements))

    free_names = [f"u{c}" for c in free]
    assignments: List[Dict[int, MPoly]] = []
    if not free:
        if all(not h for h in reduced):
            assignments.append({})
    elif len(free) == 1:
        small, *_ = ring(",".join(free_names + list(SYMBOLS)), QQ)
        polys = [h.set_ring(small) for h in reduced if h]
        for root in _linear_roots(polys[0], free_names[0]) if polys else []:
            assignments.append({free[0]: root.set_ring(RING)})
    elif len(free) == 2:
        small, *_ = ring(",".join(free_names + list(SYMBOLS)), QQ)
        polys = [h.set_ring(small) for h in reduced if h]
        first, second = free_names
        if len(polys) < 2:
            raise SingularSystemError(order=i, model=spec.model.value)
        elim = polys[0].resultant(polys[1])
        if not elim:
            raise SingularSystemError(order=i, determinant="resultant 0", model=spec.model.value)
        for root2 in _linear_roots(elim, second):
            r2 = root2.set_ring(small)
            for h in polys:
                h2 = h.compose(gen(second, small), r2)
                if h2:
                    for root1 in _linear_roots(h2, first):
                        assignments.append({free[0]: root1.set_ring(RING), free[1]: r2.set_ring(RING)})
                    break
    else:
        raise SingularSystemError(order=i, determinant=f"{len(free)} free unknowns", model=spec.model.value)

    candidates = []
    for assignment in assignments:
        full: List[Optional[MPoly]] = [None] * m
        for c, value in assignment.items():
            full[c] = value
        try:
            for k, c in enumerate(piv_cols):
                num = numerators[k].compose([(us[f], lift(assignment[f], aug)) for f in free]) \
                    if free else numerators[k]
                full[c] = exact_quotient(num, lift(common, aug), "branch pivot").set_ring(RING)
        except UncleanDivisionError:
            continue
        point = [(us[k], lift(full[k], aug)) for k in range(m)]
        if all(not f.compose(point) for f in rows):
            candidate = tuple(full)
            if candidate not in candidates:
                candidates.append(candidate)
    return candidates


def _solve_first_order(state: SolverState) -> Tuple[Tuple[MPoly, ...], Optional[RatFrac]]:
    """Solves the quadratic system S_1 and keeps the branch that continues."""
    candidates = _branch_candidates(state, 1)
    viable = []
    for values in candidates:
        trial = append_layer(state, 1, values, None)
        try:
            solve_linear_layer(trial, 2)
        except (SingularSystemError, UncleanDivisionError):
            continue
        viable.append(values)
    if not viable:
        raise SingularSystemError(order=1, determinant="no viable branch", model=state.spec.model.value)
    if len(viable) > 1:
        viable.sort(key=lambda vals: [format_poly(v) for v in vals])
        logger.warning(
            "Several branches continue past order 1; keeping the first",
            event_type="branch_ambiguity",
            model=state.spec.model.value,
            branches=len(viable),
        )
    return viable[0], None


def advance_order(state: SolverState, row_order: Optional[Sequence[int]] = None) -> SolverState:
    """Solves S_i for i = order_done + 1 and appends C_i.

    Raises:
        SingularSystemError: S_i has no unique polynomial solution
    """
    i = state.order_done + 1
    started = time.perf_counter()
    with trace_span("advance_order", {"model": state.spec.model.value, "order": i}):
        if i == 1:
            values, det = _solve_first_order(state)
        else:
            values, det = solve_linear_layer(state, i, row_order=row_order)
    duration = time.perf_counter() - started
    record_order_solved(state.spec.model.value, duration)
    logger.order_solved(
        model=state.spec.model.value,
        order=i,
        determinant_terms=len(det.num) if det is not None else 0,
        duration_ms=round(duration * 1000, 2),
    )
    return append_layer(state, i, values, det)


def solve(model, order: int, row_order: Optional[Sequence[int]] = None) -> SolverState:
    """Solves a model through ``order`` and extracts its main series."""
    from solver.identities import extract_main

    spec = get_spec(model)
    if order < 1:
        raise ValueError("order must be at least 1")
    state = initial_state(spec)
    while state.order_done < order:
        state = advance_order(state, row_order=row_order)
    record_series_order(spec.model.value, state.order_done)
    return replace(state, main=extract_main(state))
