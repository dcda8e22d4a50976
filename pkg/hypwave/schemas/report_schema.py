from typing import Any, Dict, List, Literal

from pydantic import BaseModel, ConfigDict, Field

from hypwave.schemas.norm_schema import Anisotropy

REPORT_SCHEMA = "hypwave-report/1"


class FitRecord(BaseModel):
    name: str
    abscissa: str
    slope: float
    intercept: float
    r2: float
    target: float
    tolerance: float
    bound: Literal["equal", "lower"] = "equal"
    provenance: Literal["PAPER", "TRIVIAL", "DERIVED"]
    passed: bool


class SpreadRecord(BaseModel):
    cell: str
    count: int
    min: float
    max: float
    ratio: float


class Verdict(BaseModel):
    criterion: str
    passed: bool
    detail: str = ""


class ExperimentReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(REPORT_SCHEMA, alias="schema")
    experiment: str
    parameters: Dict[str, Any] = {}
    items: List[Dict[str, Any]] = []
    fits: List[FitRecord] = []
    spreads: List[SpreadRecord] = []
    verdicts: List[Verdict] = []
    notes: List[str] = []
    wall_clock: float = 0.0

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def verdict(self, criterion: str) -> Verdict:
        for v in self.verdicts:
            if v.criterion == criterion:
                return v
        raise KeyError(criterion)

    def fit(self, name: str) -> FitRecord:
        for f in self.fits:
            if f.name == name:
                return f
        raise KeyError(name)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


class DetectionResult(BaseModel):
    s_hat: float
    alpha_hat: Anisotropy
    intercept: float
    rss: float = Field(..., ge=0)
    levels_used: int
