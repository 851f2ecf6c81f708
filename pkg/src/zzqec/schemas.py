"""Pydantic request/response models shared by the web service and the CLI."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

CodeName = Literal["steane7", "laflamme5"]
EngineName = Literal["brute", "factorized", "closed", "perturbative", "recursive"]


class CurveRequest(BaseModel):
    """A delta_t sweep of one failure-probability curve."""

    code: CodeName
    depth: int = Field(1, ge=1)
    engine: EngineName = "closed"
    alpha_sq: float = Field(0.5, ge=0.0, le=1.0)
    lo: float = 0.0
    hi: float
    samples: int = Field(ge=2)

    @model_validator(mode="after")
    def _range_ok(self) -> "CurveRequest":
        if not self.lo < self.hi:
            raise ValueError("require lo < hi")
        return self


class CurvePoint(BaseModel):
    delta_t: float
    p_fail: float


class CurveResponse(BaseModel):
    code: CodeName
    depth: int
    engine: EngineName
    alpha_sq: float
    points: list[CurvePoint]


class ValidateRequest(BaseModel):
    grid: int = Field(50, ge=4, le=500)
    # overrides the stated per-check tolerance of the engine-agreement checks
    tolerance: float | None = Field(None, gt=0.0)


class ValidationCheck(BaseModel):
    name: str
    max_deviation: float
    tolerance: float
    passed: bool


class ValidationReport(BaseModel):
    passed: bool
    worst: str
    checks: list[ValidationCheck]


class CodeThreshold(BaseModel):
    code: CodeName
    pair_choices: int
    depth1_coefficient: int
    threshold_numerator: int
    threshold_denominator: int
    threshold: float


class ThresholdResponse(BaseModel):
    codes: list[CodeThreshold]


class DeltaEstimateResponse(BaseModel):
    distance_m: float
    delta_per_s: float
    tau_gate_s: float
    delta_t_per_gate: float
    delta_t_sq_per_gate: float
