"""Unit tests for golden regression"""

import json

from evaluation.regression import compare_artifacts, detect_regression, load_baseline, save_baseline


def _artifact(**overrides):
    artifact = {
        "schema_version": "1",
        "model": "maps",
        "order": 4,
        "bindings": None,
        "tables": {"P": [["0", "0"], ["-4", "8 - 2*q*w"]]},
        "series": {"M1": ["w", "q*w^2 + b*w^2 + b*w + w", "x"]},
        "determinants": [None, "256"],
        "point_values": {},
    }
    artifact.update(overrides)
    return artifact


class TestCompareArtifacts:
    """Tests for coefficientwise comparison"""

    def test_identical(self):
        """Equal artifacts show no regression"""
        result = compare_artifacts(_artifact(), _artifact())
        assert not result["has_regression"]
        assert result["first_difference"] is None

    def test_first_difference_named(self):
        """A changed coefficient is reported by path"""
        changed = _artifact(series={"M1": ["w", "q*w^2", "x"]})
        result = compare_artifacts(changed, _artifact())
        assert result["has_regression"]
        assert result["first_difference"].startswith("series.M1[1]")
        assert result["differences"] == 1

    def test_common_orders_only(self):
        """A longer baseline is compared over the shorter run"""
        shorter = _artifact(order=3, series={"M1": ["w", "q*w^2 + b*w^2 + b*w + w"]})
        result = compare_artifacts(shorter, _artifact())
        assert not result["has_regression"]
        assert result["compared_order"] == 3

    def test_model_mismatch(self):
        """Artifacts of different runs never compare equal"""
        result = compare_artifacts(_artifact(bindings="q=4"), _artifact())
        assert result["has_regression"]
        assert result["first_difference"].startswith("run:")


class TestBaselineFiles:
    """Tests for stored baselines"""

    def test_missing_baseline(self, tmp_path):
        """No baseline means no regression"""
        assert load_baseline(str(tmp_path / "absent.json")) == {}
        result = detect_regression(_artifact(), str(tmp_path / "absent.json"))
        assert not result["has_regression"]

    def test_tampered_baseline(self, tmp_path):
        """An edited baseline coefficient is detected"""
        baseline = _artifact()
        baseline["tables"]["P"][1][0] = "-5"
        path = tmp_path / "baseline.json"
        path.write_text(json.dumps(baseline))
        result = detect_regression(_artifact(), str(path))
        assert result["has_regression"]
        assert "tables.P[1][0]" in result["first_difference"]

    def test_save_baseline(self, tmp_path):
        """Saving copies the artifact file"""
        results = tmp_path / "run.json"
        results.write_text(json.dumps(_artifact()))
        target = tmp_path / "baseline.json"
        save_baseline(str(results), str(target))
        assert load_baseline(str(target)) == _artifact()
