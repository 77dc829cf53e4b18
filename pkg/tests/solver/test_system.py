"""Unit tests for the order-by-order solver"""

import pytest
from sympy.polys.rings import PolyElement

from algebra.polys import RING, integer_content, nu, q, w
from core.errors import PottsError
from core.reports import all_passed
from solver.identities import (
    derivative_identity_residual,
    extract_main,
    determinant_ratio,
    determinant_reports,
    first_layer_report,
    leading_coefficient_report,
    main_series,
    maps_series,
    nondifferential_residuals,
    known_expansion_reports,
    tutte_series,
)
from solver.models import MAPS, TRIANGULATIONS, Model, get_spec
from solver.system import advance_order, initial_state, residual_is_zero, solve, system_residual


class TestModels:
    """Tests for the model definitions"""

    def test_lookup(self):
        """Models are found by name or member"""
        assert get_spec("maps") is MAPS
        assert get_spec(Model.TRIANGULATIONS) is TRIANGULATIONS
        with pytest.raises(ValueError):
            get_spec("quadrangulations")

    def test_unknown_counts(self):
        """P, Q and R contribute deg_p + 4 unknowns per order"""
        assert MAPS.n_unknowns == 8
        assert TRIANGULATIONS.n_unknowns == 7
        assert len(MAPS.rows) == MAPS.n_unknowns
        assert len(TRIANGULATIONS.rows) == TRIANGULATIONS.n_unknowns

    def test_initial_conditions(self):
        """Size-0 layers of P and Q"""
        state = initial_state(MAPS)
        assert state.order_done == 0
        assert state.table("P", 0, 4) == RING.one
        assert state.table("Q", 0, 1) == -RING.one
        with pytest.raises(IndexError):
            state.table("R", 0, 0)

    def test_order_must_be_positive(self):
        """Solving to order 0 is rejected"""
        with pytest.raises(ValueError):
            solve("maps", 0)


class TestMapsSolve:
    """Tests for the planar-maps system"""

    def test_system_residual_vanishes(self, maps_state):
        """Every x-coefficient of the residual is zero"""
        assert residual_is_zero(system_residual(maps_state))

    def test_first_layer(self, maps_state):
        """C_1 matches the known first-order solution"""
        report = first_layer_report(maps_state)
        assert report.passed, report.detail

    def test_leading_coefficient_constant(self, maps_state):
        """Q_2 stays at its initial value"""
        assert leading_coefficient_report(maps_state).passed

    def test_determinants_match_formula(self, maps_state):
        """det S_i is a nonzero constant times its closed form"""
        reports = determinant_reports(maps_state)
        assert len(reports) == maps_state.order_done - 1
        assert all_passed(reports)
        assert determinant_ratio(maps_state, 1) is None
        assert determinant_ratio(maps_state, 2) != 0

    def test_pivot_order_does_not_change_tables(self, maps_state):
        """Reversed pivot rows give the same tables and determinants"""
        reversed_rows = list(reversed(range(MAPS.n_unknowns)))
        other = solve("maps", 3, row_order=reversed_rows)
        for name in ("P", "Q", "R"):
            depth = 3 if name == "R" else 4
            assert getattr(other, name)[:depth] == getattr(maps_state, name)[:depth]
        assert other.determinants[:3] == maps_state.determinants[:3]

    def test_advance_order_step_by_step(self, maps_state):
        """Advancing one order at a time reproduces the solved layers"""
        state = initial_state(MAPS)
        for _ in range(3):
            state = advance_order(state)
        assert state.order_done == 3
        assert state.main is None
        assert state.P == maps_state.P[:4]
        assert state.Q == maps_state.Q[:4]
        assert state.R == maps_state.R[:3]

    def test_extract_main(self, maps_state):
        """The stored main series is the one extracted from the tables"""
        main = extract_main(maps_state)
        assert main == main_series(maps_state)
        assert main.order == maps_state.order_done

    def test_known_expansions(self, maps_state):
        """P_0 and the main series start as expected"""
        assert all_passed(known_expansion_reports(maps_state))

    def test_maps_series(self, maps_state):
        """M(1) = w + (w^2 (q - 1 + nu) + w nu) t + ..."""
        M1 = maps_series(maps_state)
        assert M1.order == maps_state.order_done - 2
        assert M1[0] == w
        assert M1[1] == w ** 2 * (q - 1 + nu) + w * nu

    def test_identities(self, maps_state):
        """Non-differential and derivative identities"""
        assert all_passed(nondifferential_residuals(maps_state))
        assert derivative_identity_residual(maps_state).is_zero()

    def test_coefficients_are_polynomials(self, maps_state):
        """Every solved table entry clears to a polynomial"""
        for name, layers in (("P", maps_state.P), ("Q", maps_state.Q), ("R", maps_state.R)):
            for s, layer in enumerate(layers):
                assert isinstance(layer, PolyElement), f"{name} at t^{s}"
                assert integer_content(layer) >= 1

    def test_tutte_series_wrong_model(self, maps_state):
        """T_2 exists only for triangulations"""
        with pytest.raises(PottsError):
            tutte_series(maps_state)


class TestTriangulationsSolve:
    """Tests for the triangulations system"""

    def test_system_residual_vanishes(self, triangulations_state):
        """Every x-coefficient of the residual is zero"""
        assert residual_is_zero(system_residual(triangulations_state))

    def test_first_layer_and_determinants(self, triangulations_state):
        """C_1 and det S_i as expected"""
        assert first_layer_report(triangulations_state).passed
        assert all_passed(determinant_reports(triangulations_state))

    def test_leading_coefficient_constant(self, triangulations_state):
        """Q_2 = 2 nu at every order"""
        Q2 = triangulations_state.coefficient_series("Q", 2)
        assert all(c == (2 * nu if n == 0 else RING.zero) for n, c in enumerate(Q2.coeffs))

    def test_main_series(self, triangulations_state):
        """T_1 starts with nu (q - 1 + nu) w^2"""
        T1 = main_series(triangulations_state)
        assert T1[0] == RING.zero
        assert T1[1] == RING.zero
        assert T1[2] == nu * (q - 1 + nu)

    def test_tutte_series_divides(self, triangulations_state):
        """T_1 is divisible by nu"""
        T2 = tutte_series(triangulations_state)
        assert T2[2] == q - 1 + nu

    def test_identities(self, triangulations_state):
        """Non-differential and derivative identities"""
        assert all_passed(nondifferential_residuals(triangulations_state))
        assert derivative_identity_residual(triangulations_state).is_zero()
        assert all_passed(known_expansion_reports(triangulations_state))

    def test_maps_series_wrong_model(self, triangulations_state):
        """M(1) exists only for planar maps"""
        with pytest.raises(PottsError):
            maps_series(triangulations_state)


@pytest.mark.slow
class TestDefaultOrder:
    """Solves to the default order of 10"""

    def test_maps_order_ten(self):
        """The full maps pipeline at order 10"""
        state = solve("maps", 10)
        assert residual_is_zero(system_residual(state))
        assert all_passed(determinant_reports(state))

    def test_triangulations_order_ten(self):
        """The full triangulations pipeline at order 10"""
        state = solve("triangulations", 10)
        assert residual_is_zero(system_residual(state))
        assert all_passed(nondifferential_residuals(state))
