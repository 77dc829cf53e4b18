"""Unit tests for the catalytic iterations"""

import pytest

from algebra.polys import evaluate, q
from core.reports import all_passed
from oracle.bipartite import (
    BIPARTITE_POINT,
    bipartite_invariant_check,
    bipartite_series,
    expected_invariants,
    iterate_root_edge,
    solve_invariants,
)
from oracle.catalytic import (
    iterate_tutte_G,
    iterate_two_catalytic,
    oracle_maps_series,
    potts_series,
    known_potts_expansion,
    tutte_h_series,
)
from oracle.potts import oracle_M1
from oracle.toy import closed_form_m1, iterate_uncoloured, toy_m1, toy_suite


class TestTwoCatalytic:
    """Tests for the two-catalytic equation of coloured maps"""

    def test_known_expansion(self):
        """M(y) through t^2"""
        expected = known_potts_expansion()
        M = potts_series(2)
        assert list(M.coeffs) == expected

    def test_degree_bounds(self):
        """Coefficient n has degree at most 2n + 2 in x and y"""
        Mbar = iterate_two_catalytic(3)
        for n in range(4):
            dx, dy = Mbar.degrees(n)
            assert dx <= 2 * n + 2 and dy <= 2 * n + 2

    def test_matches_enumeration(self):
        """The iteration and brute force agree through three edges"""
        assert list(oracle_maps_series(3).coeffs) == list(oracle_M1(3).coeffs)

    def test_point_iteration(self):
        """Fixing parameters during the iteration equals fixing them afterwards"""
        point = {"q": 3, "b": 2, "w": 1}
        fixed = oracle_maps_series(3, point)
        generic = oracle_maps_series(3)
        assert list(fixed.coeffs) == [evaluate(c, point) for c in generic.coeffs]

    def test_negative_order(self):
        """Orders below zero are rejected"""
        with pytest.raises(ValueError):
            iterate_two_catalytic(-1)


class TestTutteG:
    """Tests for Tutte's proper-colouring iteration"""

    def test_first_coefficients(self):
        """H = q(q - 1) w^2 + q(q - 1)(q - 2) w^3 + ..."""
        H = tutte_h_series(3)
        assert H[2] == q * (q - 1)
        assert H[3] == q * (q - 1) * (q - 2)

    def test_starts_at_w2(self):
        """G needs order two"""
        with pytest.raises(ValueError):
            iterate_tutte_G(1)


class TestBipartite:
    """Tests for bipartite maps at q = 2, nu = 0, w = 1"""

    def test_counts(self):
        """Rooted bipartite maps: 1, 1, 3, 12, 56"""
        M1 = bipartite_series(4).map(lambda c: evaluate(c, {"y": 1}))
        assert [int(c.coeff(1)) for c in M1.coeffs] == [1, 1, 3, 12, 56]

    def test_root_edge_iteration_agrees(self):
        """The root-edge equation gives the same M(y)"""
        assert list(iterate_root_edge(5).coeffs) == list(bipartite_series(5).coeffs)

    def test_invariants(self):
        """The solved invariants match their closed forms"""
        order = 3
        M = iterate_root_edge(order + 4)
        solved = solve_invariants(M)
        expected = expected_invariants(M.map(lambda c: evaluate(c, {"y": 1})))
        for r in range(5):
            n = min(order, solved[r].order)
            assert solved[r].truncate(n).coeffs == expected[r].truncate(n).coeffs

    def test_check_passes(self):
        """Every bipartite report passes"""
        reports = bipartite_invariant_check(3)
        assert all_passed(reports), [(r.name, r.detail) for r in reports if not r.passed]

    def test_order_must_be_positive(self):
        """Order zero is rejected"""
        with pytest.raises(ValueError):
            bipartite_invariant_check(0)

    def test_point(self):
        """The bipartite point is q = 2, b = -1, w = 1"""
        assert BIPARTITE_POINT == {"q": 2, "b": -1, "w": 1}


class TestUncoloured:
    """Tests for the one-catalytic toy equation"""

    def test_counts(self):
        """1, 2, 9, 54, 378 rooted planar maps"""
        M1 = toy_m1(iterate_uncoloured(4))
        assert [int(c.coeff(1)) for c in M1.coeffs] == [1, 2, 9, 54, 378]

    def test_closed_form(self):
        """Coefficients of the closed form agree"""
        assert list(closed_form_m1(4).coeffs) == list(toy_m1(iterate_uncoloured(4)).coeffs)

    def test_suite(self):
        """Quadratic method checks all pass"""
        reports = toy_suite(5)
        assert all_passed(reports), [(r.name, r.detail) for r in reports if not r.passed]
