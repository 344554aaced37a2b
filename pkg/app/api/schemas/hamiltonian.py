"""Hamiltonian schemas"""

import math
from typing import Literal

from pydantic import BaseModel, Field, field_validator


EffectiveReading = Literal["symmetric", "literal"]


class CouplingsModel(BaseModel):
    """Link couplings J_x (red), J_y (green), J_z (blue)."""

    jx: float = 1.0
    jy: float = 1.0
    jz: float = 1.0

    @field_validator("jx", "jy", "jz")
    @classmethod
    def must_be_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("couplings must be finite")
        return value


class TermRecord(BaseModel):
    """One line of a term-list export."""

    coefficient: float
    pauli_text: str


class EffectiveCoefficientsResponse(BaseModel):
    kx: float
    ky: float
    kz: float
    reading: EffectiveReading
    literal: dict[str, float] = Field(
        ..., description="Coefficients evaluated with the formula exactly as printed"
    )
    symmetric: dict[str, float]


class HamiltonianSummary(BaseModel):
    model: str
    n_qubits: int
    n_terms: int
    zero_terms: list[int]
    is_real: bool
