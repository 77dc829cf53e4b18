"""Unit tests for Potts and Tutte polynomials of enumerated maps"""

from algebra.polys import RING, b, nu, q, w
from core.reports import all_passed
from oracle.maps import ATOMIC, RotMap, enumerate_rooted_maps
from oracle.potts import (
    TUTTE_RING,
    duality_check,
    enumeration_reports,
    fk_potts,
    fk_tutte_consistent,
    has_loop,
    is_simple,
    mu,
    networkx_chromatic,
    oracle_M1,
    potts_labels,
    self_dual_weight,
    swap_tutte,
    tnu,
)

LOOP = RotMap((1, 0), (1, 0), 0)
BRIDGE = RotMap((0, 1), (1, 0), 0)


class TestPottsPolynomial:
    """Tests for the Fortuin-Kasteleyn expansion"""

    def test_labels(self):
        """P/q for the three smallest maps"""
        assert fk_potts(ATOMIC).label == RING.one
        assert fk_potts(LOOP).label == nu
        assert fk_potts(BRIDGE).label == q - 1 + nu

    def test_tutte_of_loop_and_bridge(self):
        """T = nu for a loop and mu for a bridge"""
        assert fk_potts(LOOP).tutte == tnu
        assert fk_potts(BRIDGE).tutte == mu
        assert swap_tutte(mu) == tnu
        assert fk_potts(ATOMIC).tutte == TUTTE_RING.one

    def test_chromatic(self):
        """Loops admit no proper colouring; a bridge has q(q - 1)"""
        assert fk_potts(LOOP).chromatic() == RING.zero
        assert fk_potts(BRIDGE).chromatic() == q * (q - 1)
        assert networkx_chromatic(BRIDGE) == q * (q - 1)

    def test_structure_predicates(self):
        """Loops and simple graphs"""
        assert has_loop(LOOP) and not is_simple(LOOP)
        assert is_simple(BRIDGE) and not has_loop(BRIDGE)

    def test_every_small_map(self):
        """Duality and FK consistency hold map by map"""
        for rooted in enumerate_rooted_maps(3):
            assert duality_check(rooted), rooted.to_text()
            assert fk_tutte_consistent(fk_potts(rooted)), rooted.to_text()

    def test_self_dual_weight(self):
        """b^(2c + |S| - 1 - v) summed over subsets"""
        assert self_dual_weight(ATOMIC) == RING.one
        assert self_dual_weight(LOOP) == 1 + b
        assert self_dual_weight(BRIDGE) == b + 1


class TestEnumerationSeries:
    """Tests for series built from enumerated maps"""

    def test_m1_start(self):
        """M(1) = w + (w^2 (q - 1 + nu) + w nu) t + ..."""
        M1 = oracle_M1(2)
        assert M1.order == 2
        assert M1[0] == w
        assert M1[1] == w ** 2 * (q - 1 + nu) + w * nu

    def test_labels_export(self):
        """Labels are keyed by map text"""
        labels = potts_labels(enumerate_rooted_maps(1))
        assert labels["atomic"] == "1"
        assert labels[LOOP.to_text()] == "b + 1"
        assert len(labels) == 3

    def test_reports_pass(self):
        """Every enumeration check passes through three edges"""
        reports = enumeration_reports(3)
        assert all_passed(reports), [r.name for r in reports if not r.passed]
        assert "chromatic polynomial" in {r.name for r in reports}
