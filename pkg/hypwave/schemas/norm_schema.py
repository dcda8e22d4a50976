import math
from typing import Literal, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from hypwave.exceptions import ParameterError

ALPHA_SUM_TOL = 1e-9


class Anisotropy(BaseModel):
    model_config = ConfigDict(frozen=True)

    alphas: Tuple[float, ...] = Field(..., min_length=1, max_length=3)

    @field_validator("alphas")
    @classmethod
    def _normalized(cls, v):
        if any(not math.isfinite(a) or a <= 0 for a in v):
            raise ValueError(f"anisotropy entries must be positive, got {v}")
        if abs(sum(v) - len(v)) > ALPHA_SUM_TOL:
            raise ValueError(f"anisotropy must sum to d={len(v)}, got sum {sum(v)!r}")
        return v

    @property
    def d(self) -> int:
        return len(self.alphas)

    @property
    def alpha_min(self) -> float:
        return min(self.alphas)

    @property
    def alpha_max(self) -> float:
        return max(self.alphas)

    @classmethod
    def isotropic(cls, d: int) -> "Anisotropy":
        return cls(alphas=(1.0,) * d)

    def permuted(self, order: Sequence[int]) -> "Anisotropy":
        return Anisotropy(alphas=tuple(self.alphas[i] for i in order))


def as_anisotropy(value, d: int | None = None) -> Anisotropy:
    """Coerce None, a comma list, a sequence or an Anisotropy."""
    if isinstance(value, Anisotropy):
        alpha = value
    else:
        if value is None:
            if d is None:
                raise ParameterError("anisotropy or dimension required")
            return Anisotropy.isotropic(d)
        if isinstance(value, str):
            try:
                value = [float(part) for part in value.split(",") if part.strip()]
            except ValueError as exc:
                raise ParameterError(f"cannot parse anisotropy {value!r}") from exc
        try:
            alpha = Anisotropy(alphas=tuple(float(a) for a in value))
        except ValidationError as exc:
            raise ParameterError(exc.errors()[0]["msg"]) from exc
    if d is not None and alpha.d != d:
        raise ParameterError(f"anisotropy has {alpha.d} entries, field dimension is {d}")
    return alpha


class NormParams(BaseModel):
    """(s, p, q, alpha, weight mode). Mixed mode replaces (s, alpha) by r in the weight."""

    model_config = ConfigDict(frozen=True)

    s: float = 0.0
    p: float = Field(2.0, gt=0)
    q: float = Field(2.0, gt=0)
    alpha: Anisotropy
    weight_mode: Literal["aniso-sup", "mixed"] = "aniso-sup"
    r: float = 0.0

    @field_validator("alpha", mode="before")
    @classmethod
    def _wrap_alpha(cls, v):
        if isinstance(v, (list, tuple)):
            return {"alphas": tuple(v)}
        return v

    @field_validator("s", "r", "p", "q")
    @classmethod
    def _not_nan(cls, v):
        if math.isnan(v):
            raise ValueError("NaN is not a valid parameter")
        return v

    @property
    def sigma_p(self) -> float:
        return max(1.0 / self.p - 1.0, 0.0)

    @property
    def sigma_pq(self) -> float:
        return max(1.0 / self.p - 1.0, 1.0 / self.q - 1.0, 0.0)

    def with_q(self, q: float) -> "NormParams":
        return self.model_copy(update={"q": q})


def make_params(s=0.0, p=2.0, q=2.0, alpha=None, d=None, weight_mode="aniso-sup", r=0.0) -> NormParams:
    try:
        return NormParams(
            s=s, p=p, q=q, alpha=as_anisotropy(alpha, d), weight_mode=weight_mode, r=r
        )
    except ValidationError as exc:
        err = exc.errors()[0]
        raise ParameterError(f"{'.'.join(map(str, err['loc']))}: {err['msg']}") from exc
