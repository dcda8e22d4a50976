import math
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

UINT64 = 2**64

Provenance = Literal["PAPER", "TRIVIAL", "DERIVED"]


class RngSpec(BaseModel):
    """Counter-based 64-bit stream: Philox keyed by (seed, stream)."""

    model_config = ConfigDict(frozen=True)

    algorithm: Literal["philox4x64"] = "philox4x64"
    seed: int = Field(0, ge=0, lt=UINT64)
    stream: int = Field(0, ge=0, lt=UINT64)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.seed + (self.stream << 64)))

    def child(self, index: int) -> "RngSpec":
        return self.model_copy(update={"stream": ((self.stream << 20) + index + 1) % UINT64})


class ExpectedExponent(BaseModel):
    """Target exponent constant + per_inv_p/p + per_inv_q/q."""

    name: str
    constant: float = 0.0
    per_inv_p: float = 0.0
    per_inv_q: float = 0.0
    bound: Literal["equal", "lower"] = "equal"
    provenance: Provenance = "PAPER"
    statement: str = ""

    def value(self, p: Optional[float] = None, q: Optional[float] = None) -> float:
        def inv(x):
            if x is None or math.isinf(x):
                return 0.0
            return 1.0 / x

        return self.constant + self.per_inv_p * inv(p) + self.per_inv_q * inv(q)


class GroundTruth(BaseModel):
    family: str
    parameters: Dict[str, Any] = {}
    exponents: List[ExpectedExponent] = []

    def exponent(self, name: str) -> ExpectedExponent:
        for item in self.exponents:
            if item.name == name:
                return item
        raise KeyError(name)
