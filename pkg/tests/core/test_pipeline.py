"""Unit tests for the solve and check pipelines"""

import json

import pytest

from core.pipeline import (
    CHECKS,
    ROOTED_MAP_COUNTS,
    build_artifact,
    build_enumeration_artifact,
    crosscheck_rows,
    enumeration_checks,
    enumeration_reports_for,
    first_mismatch,
    identity_checks,
    maps_m1_cached,
    ode_checks,
    oracle_checks,
    render,
    solve_for,
)
from core.reports import all_passed
from evaluation.runner import summarize
from schemas.models import CheckSuite, OutputFormat, RunConfig
from solver.identities import maps_series


def _failures(reports):
    return [(r.name, r.detail) for r in reports if not r.passed]


class TestChecks:
    """Tests for the check suites behind the commands"""

    def test_every_suite_registered(self):
        """Each CheckSuite has a check function"""
        assert set(CHECKS) == set(CheckSuite)

    def test_identities(self, maps_state, maps_config):
        """Identities including duality for maps"""
        reports = identity_checks(maps_state, maps_config)
        assert not _failures(reports)
        assert "duality" in {r.name for r in reports}

    def test_maps_oracles(self, maps_state, maps_config):
        """Solver, two-catalytic, bipartite and toy checks agree"""
        assert not _failures(oracle_checks(maps_state, maps_config))

    def test_m1_reaches_requested_order(self, maps_state, maps_config):
        """M(1) is compared with the iteration through t^N, not t^(N-2)"""
        M1 = maps_m1_cached(maps_state.order_done)
        assert M1.order == maps_state.order_done
        assert M1.truncate(maps_state.order_done - 2) == maps_series(maps_state)
        reports = {r.name: r for r in oracle_checks(maps_state, maps_config)}
        assert reports["solver vs two-catalytic"].checked_order == maps_state.order_done

    def test_triangulation_oracle(self, triangulations_state, triangulations_config):
        """T_2 at nu = 0 agrees with Tutte's G"""
        reports = oracle_checks(triangulations_state, triangulations_config)
        assert [r.name for r in reports] == ["solver vs Tutte G(1, 0)"]
        assert all_passed(reports)

    def test_enumeration(self, maps_state, maps_config):
        """Brute-force maps agree with the solver"""
        reports = enumeration_checks(maps_state, maps_config)
        assert not _failures(reports)
        assert "solver vs enumeration" in {r.name for r in reports}

    def test_enumeration_counts(self):
        """Counts come from the known sequence"""
        assert ROOTED_MAP_COUNTS[:4] == (1, 2, 9, 54)
        assert all_passed(enumeration_reports_for(2))

    def test_specialized_oracle(self, maps_state):
        """Comparisons also hold on the q = 4 line"""
        config = RunConfig(model="maps", order=5, specialize="q=4")
        assert not _failures(oracle_checks(maps_state, config)[:1])


class TestArtifacts:
    """Tests for artifacts and their rendering"""

    def test_solve_for_is_memoized(self, maps_state, maps_config):
        """The same config gives the same state object"""
        assert solve_for(maps_config) is solve_for(maps_config)

    def test_artifact_deterministic(self, maps_state, maps_config):
        """Two builds give byte-identical JSON"""
        first = build_artifact(maps_state, maps_config).to_json()
        second = build_artifact(maps_state, maps_config).to_json()
        assert first == second
        data = json.loads(first)
        assert data["schema_version"] == "1"
        assert data["series"]["M1"][0] == "w"
        assert data["series"]["M1tilde"][2] == "w"
        assert set(data["tables"]) == {"P", "Q", "R"}
        assert len(data["tables"]["P"]) == maps_state.order_done + 1
        assert len(data["tables"]["R"]) == maps_state.order_done

    def test_point_values(self, maps_state):
        """Series evaluated at a rational point"""
        config = RunConfig(model="maps", order=5, at="q=2,b=-1,w=1")
        artifact = build_artifact(maps_state, config)
        assert artifact.point == "b=-1,q=2,w=1"
        assert artifact.point_values["M1"][:3] == ["1", "1", "3"]

    def test_specialized_tables(self, triangulations_state):
        """Tables under a binding lose the bound symbol"""
        config = RunConfig(model="triangulations", order=5, specialize="q=4")
        artifact = build_artifact(triangulations_state, config)
        assert artifact.bindings == "q=4"
        assert all("q" not in value for layer in artifact.tables["P"] for value in layer)

    def test_render_formats(self, maps_state, maps_config):
        """CSV and text carry the series"""
        artifact = build_artifact(maps_state, maps_config)
        csv_text = render(artifact, OutputFormat.CSV)
        assert csv_text.splitlines()[0] == "kind,name,index,sub,value"
        assert "series,M1,0,,w" in csv_text.splitlines()
        text = render(artifact, OutputFormat.TEXT)
        assert text.startswith("maps solved through t^5")

    def test_enumeration_artifact(self):
        """Counts and labels of small maps"""
        result = summarize("enumeration", enumeration_reports_for(1))
        artifact = build_enumeration_artifact(1, [result])
        assert artifact.counts == {"0": 1, "1": 2}
        assert artifact.labels["atomic"] == "1"
        assert artifact.ok


class TestCrosscheck:
    """Tests for per-coefficient comparisons"""

    def test_maps_rows_vanish(self, maps_state, maps_config):
        """Every difference with the two-catalytic oracle is zero"""
        rows = crosscheck_rows(maps_state, maps_config)
        assert rows
        assert {name for name, _, _ in rows} == {"two-catalytic"}
        assert first_mismatch(rows) is None

    def test_with_enumeration(self, maps_state):
        """Requesting enumeration adds its rows"""
        config = RunConfig(model="maps", order=5, checks=["enumeration"], max_edges=2)
        rows = crosscheck_rows(maps_state, config)
        assert {name for name, _, _ in rows} == {"enumeration", "two-catalytic"}
        assert first_mismatch(rows) is None

    def test_first_mismatch(self):
        """The first nonzero difference is reported"""
        rows = [("tutte-G", 2, "0"), ("tutte-G", 3, "q"), ("tutte-G", 4, "1")]
        assert first_mismatch(rows) == ("tutte-G", 3, "q")


@pytest.mark.slow
class TestHighOrder:
    """Oracle agreement at the default order"""

    def test_maps_order_ten(self):
        """Solver and two-catalytic iteration agree through t^10; bipartite through t^8"""
        config = RunConfig(model="maps", order=10, max_edges=3)
        reports = oracle_checks(solve_for(config), config)
        assert not _failures(reports)
        compared = {r.name: r.checked_order for r in reports}
        assert compared["solver vs two-catalytic"] == 10
        enumerated = {r.name: r for r in enumeration_checks(solve_for(config), config)}
        assert enumerated["solver vs enumeration"].passed
        assert enumerated["solver vs enumeration"].checked_order == 3

    def test_triangulations_order_ten(self):
        """T_2 matches Tutte's recurrence and G(1, 0)"""
        config = RunConfig(model="triangulations", order=10, checks=["odes", "oracle"])
        state = solve_for(config)
        assert not _failures(oracle_checks(state, config))
        assert not _failures(ode_checks(state, config))
