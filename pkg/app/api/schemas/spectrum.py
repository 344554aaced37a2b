"""Spectrum schemas"""

from typing import Optional

from pydantic import BaseModel, Field


class ClusterRecord(BaseModel):
    value: float
    multiplicity: int = Field(..., description="Members among the requested eigenvalues")
    total_multiplicity: int = Field(
        ..., description="Members among all computed eigenvalues, extras included"
    )
    complete: bool = Field(
        ..., description="False when the cluster may continue past the computed window"
    )


class ExpectationRecord(BaseModel):
    operator: str
    state: int
    real: float
    imag: float


class SpectrumReport(BaseModel):
    """Lowest eigenvalues with degeneracy clustering."""

    n_qubits: int
    requested: int
    method: str
    eigenvalues: list[float]
    clusters: list[ClusterRecord]
    gap: Optional[float] = None
    residuals: list[float]
    scale: float
    iom_expectations: list[ExpectationRecord] = Field(default_factory=list)


class LevelRecord(BaseModel):
    value: float
    multiplicity: int


class StabilizerSpectrumResponse(BaseModel):
    n_qubits: int
    rank: int
    levels: list[LevelRecord]


class CompareReport(BaseModel):
    """Two-body low sector against the effective color-code spectrum."""

    jx: float
    jy: float
    jz: float
    sign_convention: str
    reading: str
    n_triangles: int
    low_sector: list[float]
    effective_spectrum: list[float]
    first_excited: float
    gap: float
    low_spread: float
    gap_ok: bool
    scale_factor: float
    relative_deviation: float
    pattern_ok: bool
    low_pattern: list[int]
    effective_pattern: list[int]
    patterns_match: bool
    fallback: Optional["CompareReport"] = None
    passed: bool
