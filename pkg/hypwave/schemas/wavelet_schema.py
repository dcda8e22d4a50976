import math
from typing import List, Literal, Tuple

import numpy as np
import pywt
from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator

from hypwave.exceptions import ParameterError

FILTER_TOL = 1e-10
HAAR_FILTER = (1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0))

# name -> (pywt table, vanishing moments L, smoothness K)
BUILTIN_WAVELETS = {
    "haar": (None, 1, 0),
    "db2": ("db2", 2, 0),
    "db4": ("db4", 4, 1),
}


class WaveletSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["haar", "cqf"] = "haar"
    name: str = "haar"
    filter: Tuple[float, ...] = HAAR_FILTER
    vanishing_moments: int = Field(1, ge=1)
    smoothness: int = Field(0, ge=0)

    @model_validator(mode="before")
    @classmethod
    def _haar_defaults(cls, data):
        if isinstance(data, dict) and data.get("kind", "haar") == "haar":
            data = {**data, "name": "haar", "filter": HAAR_FILTER,
                    "vanishing_moments": 1, "smoothness": 0}
        return data

    @model_validator(mode="after")
    def _check_filter(self):
        h = np.asarray(self.filter, dtype=np.float64)
        if h.size < 2 or h.size % 2:
            raise ValueError(f"filter length must be even and >= 2, got {h.size}")
        if abs(h.sum() - math.sqrt(2.0)) > FILTER_TOL:
            raise ValueError(f"filter taps must sum to sqrt(2), got {h.sum()!r}")
        for shift in range(0, h.size, 2):
            overlap = float(np.dot(h[: h.size - shift], h[shift:]))
            expected = 1.0 if shift == 0 else 0.0
            if abs(overlap - expected) > FILTER_TOL:
                raise ValueError(
                    f"filter is not orthonormal at shift {shift}: {overlap!r}"
                )
        return self

    @property
    def length(self) -> int:
        return len(self.filter)

    @classmethod
    def builtin(cls, name: str) -> "WaveletSpec":
        if name not in BUILTIN_WAVELETS:
            raise ParameterError(f"unknown wavelet {name!r}; choose from {sorted(BUILTIN_WAVELETS)}")
        table, moments, smoothness = BUILTIN_WAVELETS[name]
        if table is None:
            return cls(kind="haar")
        return cls(
            kind="cqf",
            name=name,
            filter=tuple(float(t) for t in pywt.Wavelet(table).rec_lo),
            vanishing_moments=moments,
            smoothness=smoothness,
        )


class Inequality(BaseModel):
    name: str
    lhs: float
    rhs: float
    margin: float
    holds: bool

    @field_serializer("lhs", "rhs", "margin")
    def _finite_or_label(self, v: float):
        # JSON has no infinity; reports use the same label
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v


class AdmissibilityReport(BaseModel):
    characterization: str
    wavelet: str
    inequalities: List[Inequality] = []
    valid: bool
