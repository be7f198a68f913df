from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from knsuper.algebras.liesuper import ProjectiveConnection
from knsuper.cli.evaluator import evaluate_connection
from knsuper.core.coeffield import to_rational
from knsuper.core.errors import KNError
from knsuper.core.merofun import PunctureConfig


class RunConfig(BaseModel):
    """Options shared by every command."""

    points: Literal[2, 3] = 3
    beta: Optional[str] = None
    window: int = Field(default=4, ge=1)
    connection: Optional[str] = None
    format: Literal["json", "csv", "pretty"] = "json"
    seed: int = 0
    samples: int = Field(default=200, ge=1)

    @field_validator("beta")
    @classmethod
    def beta_is_rational(cls, v: Optional[str]) -> Optional[str]:
        if v is None:
            return v
        try:
            to_rational(v)
        except (ValueError, KNError):
            raise ValueError(f"beta must be a rational p/q, got {v!r}") from None
        return v.strip()

    @model_validator(mode="after")
    def check_consistency(self) -> "RunConfig":
        if self.beta is not None and self.points == 3 and to_rational(self.beta) == 0:
            raise ValueError("beta must be nonzero for the three-point configuration")
        if self.connection is not None:
            try:
                evaluate_connection(self.connection, self.puncture)
            except KNError as exc:
                raise ValueError(f"connection {self.connection!r}: {exc}") from None
        return self

    @property
    def puncture(self) -> PunctureConfig:
        return PunctureConfig.two_point() if self.points == 2 else PunctureConfig.three_point()

    def projective_connection(self) -> Optional[ProjectiveConnection]:
        if self.connection is None:
            return None
        return evaluate_connection(self.connection, self.puncture)

    def summary(self) -> Dict[str, Any]:
        return self.model_dump()


class Check(BaseModel):
    id: str
    status: Literal["pass", "fail"]
    detail: str = ""


class SuiteReport(BaseModel):
    suite: str
    checks: List[Check] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)


class EvalResult(BaseModel):
    expr: str
    value: str
    config: Dict[str, Any] = Field(default_factory=dict)
