"""Pydantic models for run configuration, check results and artifacts"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.config import DEFAULT_ORDER, ENUMERATION_HARD_CAP, ENUMERATION_MAX_EDGES, SCHEMA_VERSION
from core.reports import ResidualReport
from solver.models import Model
from solver.specialize import describe_bindings, parse_bindings


class CheckSuite(str, Enum):
    """Groups of checks a command can run"""
    SYSTEM = "system"
    IDENTITIES = "identities"
    ODES = "odes"
    ORACLE = "oracle"
    ENUMERATION = "enumeration"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class RunConfig(BaseModel):
    """Everything one command needs; flags override the config file"""
    model_config = ConfigDict(frozen=True, protected_namespaces=())

    model: Model = Field(Model.MAPS, description="Family of maps")
    order: int = Field(DEFAULT_ORDER, ge=1, description="Truncation order in the size variable")
    specialize: Optional[str] = Field(None, description="Bindings such as q=4 or q=b^2,w=1/b")
    at: Optional[str] = Field(None, description="Rational parameter point for evaluation")
    checks: List[CheckSuite] = Field(default_factory=list, description="Check suites to run")
    max_edges: int = Field(ENUMERATION_MAX_EDGES, ge=0, le=ENUMERATION_HARD_CAP,
                           description="Largest edge count for map enumeration")
    out: Optional[Path] = Field(None, description="Output file; stdout when absent")
    format: OutputFormat = Field(OutputFormat.JSON, description="Output format")
    baseline: Optional[Path] = Field(None, description="Stored artifact to compare against")

    @field_validator("specialize", "at")
    @classmethod
    def _canonical_bindings(cls, value: Optional[str]) -> Optional[str]:
        if value is None or not value.strip():
            return None
        return describe_bindings(parse_bindings(value))

    @classmethod
    def from_sources(cls, config_file: Optional[Path] = None, **flags: Any) -> "RunConfig":
        """Merges a JSON config file under explicit flags (None flags are ignored)."""
        data: Dict[str, Any] = {}
        if config_file is not None:
            with open(config_file, "r", encoding="utf-8") as f:
                data.update(json.load(f))
        data.update({k: v for k, v in flags.items() if v is not None})
        return cls(**data)


class CheckResult(BaseModel):
    """Outcome of one identity check"""
    suite: str = Field(..., description="Suite the check belongs to")
    name: str = Field(..., description="Identity name")
    passed: bool = Field(..., description="Whether the residual vanished")
    checked_order: Optional[int] = Field(None, description="Order through which it was checked")
    detail: Optional[str] = Field(None, description="First nonzero coefficient or other diagnostic")

    @classmethod
    def from_report(cls, suite: str, report: ResidualReport) -> "CheckResult":
        return cls(suite=suite, **report.as_dict())


class SuiteResult(BaseModel):
    """All checks of one suite"""
    suite: str
    passed: int = Field(0, ge=0)
    failed: int = Field(0, ge=0)
    error: Optional[str] = Field(None, description="Error that aborted the suite")
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.error is None


class SolveArtifact(BaseModel):
    """Tables and series of one solve, in canonical text form

    Tables map a name (P, Q, R) to its layers; layer s lists the coefficients
    of x^0, x^1, ... at size^s.
    """
    schema_version: str = Field(SCHEMA_VERSION)
    model: str
    order: int
    size_var: str
    bindings: Optional[str] = None
    tables: Dict[str, List[List[str]]] = Field(default_factory=dict)
    determinants: List[Optional[str]] = Field(default_factory=list)
    series: Dict[str, List[str]] = Field(default_factory=dict)
    point: Optional[str] = None
    point_values: Dict[str, List[str]] = Field(default_factory=dict)
    checks: List[SuiteResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.checks)

    def to_json(self) -> str:
        """Deterministic JSON: sorted keys, no timestamps."""
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


class EnumerationArtifact(BaseModel):
    """Rooted maps found by brute force, with their Potts labels"""
    schema_version: str = Field(SCHEMA_VERSION)
    max_edges: int
    counts: Dict[str, int] = Field(default_factory=dict)
    labels: Dict[str, str] = Field(default_factory=dict)
    checks: List[SuiteResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.checks)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"
