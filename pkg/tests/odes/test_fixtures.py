"""Unit tests for transcribed equation fixtures"""

import json

import pytest

from algebra.polys import RING, q
from algebra.series import Series
from core.errors import FixtureError
from odes.recurrences import h_recurrence, tutte_recurrence
from odes.spec import (
    available_fixtures,
    check_metadata,
    load_fixture,
    load_fixture_file,
    ode_residual,
    parse_fixture,
)


class TestFixtureLoading:
    """Tests for parsing and validating fixtures"""

    def test_all_fixtures_load(self):
        """Every shipped fixture parses and matches its recorded metadata"""
        names = available_fixtures()
        assert "tutte_t2" in names
        assert "self_dual_pair" in names
        for name in names:
            spec = load_fixture(name)
            assert check_metadata(spec) == []
            assert len(spec.terms) == len(spec.equations)

    def test_metadata(self, fixture_data):
        """Order and degree of Tutte's equation"""
        spec = parse_fixture(fixture_data)
        assert spec.main == "S"
        assert spec.derivative_order() == 2
        assert spec.placeholder_degree() == 2
        assert spec.placeholder_names == ("X", "Y", "Z")
        assert spec.placeholder_terms() == spec.terms[0] == 6

    def test_missing_field(self, fixture_data):
        """A fixture without its size variable is rejected"""
        del fixture_data["size_var"]
        with pytest.raises(FixtureError):
            parse_fixture(fixture_data)

    def test_unknown_placeholder(self, fixture_data):
        """Only the documented placeholders are allowed"""
        fixture_data["placeholders"]["W"] = ["S", 3]
        with pytest.raises(FixtureError):
            parse_fixture(fixture_data)

    def test_unparsable_polynomial(self, fixture_data):
        """Text that is not a polynomial is rejected"""
        fixture_data["polynomial"] = "X +* Y"
        with pytest.raises(FixtureError):
            parse_fixture(fixture_data)

    def test_tampered_degree_rejected(self, tmp_path, fixture_data):
        """A recorded degree that disagrees with the polynomial fails validation"""
        fixture_data["degree"] = 3
        path = tmp_path / "tampered.json"
        path.write_text(json.dumps(fixture_data))
        with pytest.raises(FixtureError) as exc:
            load_fixture_file(path)
        assert "degree" in str(exc.value)
        assert load_fixture_file(path, validate=False).degree == 3

    def test_tampered_terms_rejected(self, tmp_path, fixture_data):
        """A recorded term count that disagrees with the polynomial fails validation"""
        fixture_data["terms"] = [7]
        path = tmp_path / "tampered.json"
        path.write_text(json.dumps(fixture_data))
        with pytest.raises(FixtureError) as exc:
            load_fixture_file(path)
        assert "6 terms, recorded 7" in str(exc.value)
        fixture_data["terms"] = [6, 6]
        with pytest.raises(FixtureError):
            parse_fixture(fixture_data)

    def test_unknown_fixture(self):
        """Asking for a missing fixture raises"""
        with pytest.raises(FixtureError):
            load_fixture("no_such_equation")


class TestResiduals:
    """Tests for substituting series into equations"""

    def test_recurrence_satisfies_equation(self):
        """Tutte's recurrence solves Tutte's equation"""
        T2 = tutte_recurrence(8)
        residual = ode_residual(load_fixture("tutte_t2"), T2)
        assert residual.order == 6
        assert residual.is_zero()

    def test_tampered_coefficient_detected(self, tmp_path, fixture_data):
        """Changing one coefficient leaves a nonzero residual"""
        fixture_data["polynomial"] = fixture_data["polynomial"].replace("2*(1-q)*w", "2*(2-q)*w")
        path = tmp_path / "tampered.json"
        path.write_text(json.dumps(fixture_data))
        spec = load_fixture_file(path)
        residual = ode_residual(spec, tutte_recurrence(6))
        assert not residual.is_zero()
        assert residual.valuation() == 1

    def test_wrong_size_variable(self):
        """A series in t cannot stand for a series in w"""
        with pytest.raises(FixtureError):
            ode_residual(load_fixture("tutte_t2"), Series("t", (RING.one, RING.zero, RING.zero)))

    def test_missing_series(self):
        """Named series must all be given"""
        with pytest.raises(FixtureError):
            ode_residual(load_fixture("tutte_t2"), {"T": tutte_recurrence(4)})


class TestRecurrences:
    """Tests for Tutte's coefficient recurrences"""

    def test_first_coefficients(self):
        """a_2 = q - 1 and a_3 = (q - 1)(q - 2)"""
        T2 = tutte_recurrence(3)
        assert T2[2] == q - 1
        assert T2[3] == (q - 1) * (q - 2)

    def test_h_is_q_times_t2(self):
        """The q-scaled recurrence gives q T_2"""
        assert list(h_recurrence(7).coeffs) == [q * c for c in tutte_recurrence(7).coeffs]

    def test_order_below_two(self):
        """The recurrences start at w^2"""
        with pytest.raises(ValueError):
            tutte_recurrence(1)
        with pytest.raises(ValueError):
            h_recurrence(1)
