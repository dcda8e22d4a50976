import math
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from hypwave.exceptions import GridMismatchError
from hypwave.schemas.report_schema import DetectionResult
from hypwave.services.field_core import SampledField, make_grid


class ExponentFields(BaseModel):
    """Accepts the string "inf" for p and q, which JSON cannot carry as a number."""

    @field_validator("p", "q", mode="before", check_fields=False)
    @classmethod
    def _infinite(cls, v):
        if isinstance(v, str) and v.strip().lower() in ("inf", "infinity"):
            return math.inf
        return v


def _grid_array(rows, name: str, grid) -> np.ndarray:
    try:
        array = np.asarray(rows, dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise GridMismatchError(f"{name} are not a rectangular array of numbers: {exc}") from exc
    if array.shape != grid.shape:
        raise GridMismatchError(f"{name} have shape {array.shape}, grid expects {grid.shape}")
    return array


class FieldPayload(BaseModel):
    """Sampled field as nested row-major lists; imag defaults to zero."""

    d: int = Field(..., ge=1, le=3, example=2)
    J: int = Field(..., ge=1, example=4)
    values: List[Any] = Field(...)
    imag: Optional[List[Any]] = None

    def to_field(self):
        grid = make_grid(self.d, self.J)
        values = _grid_array(self.values, "values", grid)
        if self.imag is not None:
            imag = _grid_array(self.imag, "imag", grid)
            return SampledField(grid, values + 1j * imag)
        return SampledField(grid, values, True)


class NormRequest(ExponentFields):
    field: FieldPayload
    space: str = Field(..., example="Wt")
    s: float = 0.0
    p: float = 2.0
    q: float = 2.0
    alpha: Optional[List[float]] = None
    r: float = 0.0


class NormResponse(BaseModel):
    status: str = "success"
    space: str
    norm: float
    truncated: bool = False


class DetectRequest(ExponentFields):
    field: FieldPayload
    wavelet: str = "haar"
    p: float = 2.0
    alpha_step: float = Field(0.05, gt=0, le=1)
    j_min: int = Field(2, ge=0)
    j_max: Optional[int] = None


class DetectResponse(BaseModel):
    status: str = "success"
    result: DetectionResult


class AdmissibilityRequest(ExponentFields):
    wavelet: str = "haar"
    characterization: Literal["general", "sobolev", "haar-F", "haar-B", "haar-Sobolev"] = "general"
    scale: Literal["F", "B"] = "F"
    d: int = Field(2, ge=1, le=3)
    s: float = 0.0
    p: float = 2.0
    q: float = 2.0
    alpha: Optional[List[float]] = None


class ExperimentRequest(BaseModel):
    parameters: Dict[str, Any] = {}
