import json
from argparse import Namespace
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from hypwave.exceptions import FieldFormatError, ParameterError
from hypwave.schemas.norm_schema import Anisotropy, as_anisotropy


class CliConfig(BaseModel):
    """Common flags shared by every command, validated once after parsing."""

    model_config = ConfigDict(extra="ignore")

    command: str
    d: Optional[int] = Field(None, ge=1, le=3)
    J: Optional[int] = Field(None, ge=1)
    s: float = 0.0
    p: float = Field(2.0, gt=0)
    q: float = Field(2.0, gt=0)
    r: float = 0.0
    alpha: Optional[Anisotropy] = None
    seed: int = Field(0, ge=0)
    input: Optional[Path] = None
    output: Optional[Path] = None
    report: Optional[Path] = None
    strict: bool = False
    threads: Optional[int] = Field(None, ge=0)
    log_level: Optional[str] = None

    @model_validator(mode="before")
    @classmethod
    def _parse_alpha(cls, data):
        if isinstance(data, dict) and isinstance(data.get("alpha"), str):
            data = {**data, "alpha": as_anisotropy(data["alpha"], data.get("d"))}
        return data

    @classmethod
    def from_namespace(cls, ns: Namespace) -> "CliConfig":
        try:
            return cls.model_validate(vars(ns))
        except ValidationError as exc:
            err = exc.errors()[0]
            raise ParameterError(f"--{'.'.join(map(str, err['loc']))}: {err['msg']}") from exc


class ExperimentConfig(BaseModel):
    """Structured experiment file: {"experiment": name, "parameters": {...}}."""

    model_config = ConfigDict(extra="forbid")

    experiment: Optional[str] = None
    parameters: Dict[str, Any] = {}

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            raw = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise FieldFormatError(f"{path}: invalid JSON ({exc.msg})") from exc
        try:
            return cls.model_validate(raw)
        except ValidationError as exc:
            err = exc.errors()[0]
            raise ParameterError(f"{path}: {'.'.join(map(str, err['loc']))}: {err['msg']}") from exc
