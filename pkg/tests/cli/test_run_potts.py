"""Tests for the run_potts command line"""

import json

import pytest

from run_potts import EXIT_ERROR, EXIT_FAILED, EXIT_OK, build_parser, config_from_args, main
from schemas.models import CheckSuite


class TestArguments:
    """Tests for argument parsing"""

    def test_checks_split_on_commas(self):
        """Repeated and comma-separated --check values are merged"""
        args = build_parser().parse_args(["solve", "--check", "system,odes", "--check", "oracle"])
        config = config_from_args(args)
        assert config.checks == [CheckSuite.SYSTEM, CheckSuite.ODES, CheckSuite.ORACLE]

    def test_default_checks_per_command(self):
        """crosscheck runs the oracle suite unless told otherwise"""
        args = build_parser().parse_args(["crosscheck"])
        assert config_from_args(args, (CheckSuite.ORACLE,)).checks == [CheckSuite.ORACLE]

    def test_unknown_command(self):
        """argparse rejects unknown subcommands"""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["plot"])


class TestSolveCommand:
    """Tests for run_potts solve"""

    def test_json_is_deterministic(self, tmp_path):
        """Two identical runs write byte-identical files"""
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["solve", "--model", "maps", "--order", "5", "--check", "system"]
        assert main(argv + ["--out", str(first)]) == EXIT_OK
        assert main(argv + ["--out", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()
        data = json.loads(first.read_text())
        assert data["order"] == 5
        assert data["checks"][0]["suite"] == "system"

    def test_invalid_order(self, capsys):
        """A non-positive order is a configuration error"""
        assert main(["solve", "--order", "0"]) == EXIT_ERROR
        assert "invalid configuration" in capsys.readouterr().err

    def test_invalid_binding(self):
        """Malformed bindings are configuration errors"""
        assert main(["solve", "--order", "3", "--specialize", "q4"]) == EXIT_ERROR

    def test_missing_config_file(self, tmp_path):
        """An unreadable config file is a configuration error"""
        assert main(["solve", "--config", str(tmp_path / "absent.json")]) == EXIT_ERROR

    def test_unlicensed_specialization(self, capsys):
        """q = 0 on planar maps is refused with exit code 2"""
        assert main(["solve", "--model", "maps", "--order", "5", "--specialize", "q=0"]) == EXIT_ERROR
        assert "SpecializationError" in capsys.readouterr().err

    def test_config_file(self, tmp_path):
        """Settings can come from a JSON file"""
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"model": "triangulations", "order": 5, "format": "text"}))
        out = tmp_path / "run.txt"
        assert main(["solve", "--config", str(config), "--out", str(out)]) == EXIT_OK
        assert out.read_text().startswith("triangulations solved through w^5")


class TestBaseline:
    """Tests for golden regression from the command line"""

    def test_tampered_baseline(self, tmp_path, capsys):
        """A baseline with one edited coefficient fails with the first difference"""
        baseline = tmp_path / "baseline.json"
        assert main(["solve", "--model", "maps", "--order", "5", "--out", str(baseline)]) == EXIT_OK

        data = json.loads(baseline.read_text())
        assert main(["solve", "--model", "maps", "--order", "5", "--out", str(tmp_path / "run.json"),
                     "--baseline", str(baseline)]) == EXIT_OK

        data["series"]["M1"][2] = "0"
        baseline.write_text(json.dumps(data))
        code = main(["solve", "--model", "maps", "--order", "5", "--out", str(tmp_path / "run.json"),
                     "--baseline", str(baseline)])
        assert code == EXIT_FAILED
        assert "series.M1[2]" in capsys.readouterr().err


class TestOtherCommands:
    """Tests for crosscheck, enumerate and ode-check"""

    def test_crosscheck(self, tmp_path):
        """Zero differences against the oracles"""
        out = tmp_path / "cross.json"
        assert main(["crosscheck", "--model", "triangulations", "--order", "5", "--out", str(out)]) == EXIT_OK
        payload = json.loads(out.read_text())
        assert {row["difference"] for row in payload["rows"]} == {"0"}
        assert payload["checks"][0]["suite"] == "oracle"

    def test_enumerate(self, tmp_path):
        """Counts and labels through two edges"""
        out = tmp_path / "maps.json"
        assert main(["enumerate", "--max-edges", "2", "--out", str(out)]) == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["counts"] == {"0": 1, "1": 2, "2": 9}
        assert len(payload["labels"]) == 12

    def test_enumeration_cap(self):
        """More edges than the cap is a configuration error"""
        assert main(["enumerate", "--max-edges", "9"]) == EXIT_ERROR

    def test_ode_check(self, tmp_path):
        """The Tutte suite on its binding"""
        out = tmp_path / "tutte.csv"
        argv = ["ode-check", "--model", "triangulations", "--order", "5",
                "--specialize", "nu=0", "--format", "csv", "--out", str(out)]
        assert main(argv) == EXIT_OK
        lines = out.read_text().splitlines()
        assert any(line.startswith("check,odes,tutte ode,") and line.endswith("pass") for line in lines)
