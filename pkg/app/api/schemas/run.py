"""Run configuration and report envelope schemas"""

from datetime import datetime
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, field_validator

from app.api.schemas.code import CodeReport
from app.api.schemas.hamiltonian import (
    CouplingsModel,
    EffectiveCoefficientsResponse,
    EffectiveReading,
    HamiltonianSummary,
)
from app.api.schemas.iom import IomReport, LogicalReport
from app.api.schemas.lattice import ValidationResponse
from app.api.schemas.spectrum import CompareReport, SpectrumReport, StabilizerSpectrumResponse
from app.config import (
    DEFAULT_CLUSTER_TOL,
    DEFAULT_EIGS,
    DEFAULT_EXTRA_EIGS,
    DEFAULT_SEED,
    DEFAULT_TOL,
)


TaskName = Literal["validate", "ioms", "logicals", "code", "spectrum", "compare-effective"]
LatticeType = Literal["ruby", "square", "colex"]


class LatticeSpec(BaseModel):
    """Which lattice to build. ``colex`` is the contracted ruby lattice."""

    model_config = ConfigDict(extra="forbid")

    type: LatticeType = "ruby"
    Lx: int = Field(1, validation_alias=AliasChoices("Lx", "lx"))
    Ly: int = Field(1, validation_alias=AliasChoices("Ly", "ly"))
    L: int = Field(4, validation_alias=AliasChoices("L", "l"))

    @field_validator("Lx", "Ly")
    @classmethod
    def at_least_one(cls, value: int, info) -> int:
        if value < 1:
            raise ValueError(f"{info.field_name} must be ≥ 1")
        return value


class SolverOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    m: int = Field(DEFAULT_EIGS, ge=1, description="Number of eigenvalues to report")
    extra: int = Field(DEFAULT_EXTRA_EIGS, ge=0)
    tol: float = Field(DEFAULT_TOL, gt=0)
    cluster_tol: float = Field(DEFAULT_CLUSTER_TOL, gt=0)
    seed: int = DEFAULT_SEED


class TaskRequest(BaseModel):
    """Task inputs; the HTTP body of POST /api/tasks/{task}."""

    model_config = ConfigDict(extra="forbid")

    lattice: LatticeSpec = Field(default_factory=LatticeSpec)
    couplings: CouplingsModel = Field(default_factory=CouplingsModel)
    solver: SolverOptions = Field(default_factory=SolverOptions)
    reading: EffectiveReading = "symmetric"


class RunConfig(TaskRequest):
    """Complete, resolved configuration of one run."""

    task: TaskName
    output: Optional[str] = None


class ValidateResult(BaseModel):
    """Diagnostics per lattice; a valid ruby lattice also reports its colex."""

    task: Literal["validate"] = "validate"
    ruby: Optional[ValidationResponse] = None
    colex: Optional[ValidationResponse] = None
    square: Optional[ValidationResponse] = None


class IomsResult(IomReport):
    task: Literal["ioms"] = "ioms"


class LogicalsResult(LogicalReport):
    task: Literal["logicals"] = "logicals"


class CodeResult(BaseModel):
    task: Literal["code"] = "code"
    model: HamiltonianSummary
    code: CodeReport


class SpectrumResult(BaseModel):
    task: Literal["spectrum"] = "spectrum"
    model: HamiltonianSummary
    spectrum: SpectrumReport
    stabilizer_levels: Optional[StabilizerSpectrumResponse] = None


class CompareResult(BaseModel):
    task: Literal["compare-effective"] = "compare-effective"
    coefficients: EffectiveCoefficientsResponse
    comparison: CompareReport


TaskResult = Annotated[
    Union[ValidateResult, IomsResult, LogicalsResult, CodeResult, SpectrumResult, CompareResult],
    Field(discriminator="task"),
]


class RunReport(BaseModel):
    """Envelope written for every successful run."""

    tool: str
    version: str
    task: TaskName
    config: RunConfig
    generated_at: datetime
    result: TaskResult


class ErrorReport(BaseModel):
    tool: str
    version: str
    error: str
    message: str
    details: dict[str, Any] = Field(default_factory=dict)
