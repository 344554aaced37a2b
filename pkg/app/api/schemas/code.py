"""Stabilizer-code schemas"""

from typing import Literal, Optional

from pydantic import BaseModel, Field


CodeFamily = Literal["toric", "color"]
Statistics = Literal["vacuum", "boson", "fermion"]


class ChargeRecord(BaseModel):
    """A topological charge as an element of the fusion group."""

    name: str
    vector: list[int]
    statistics: Statistics


class ChargeTableResponse(BaseModel):
    family: CodeFamily
    group: str
    charges: list[ChargeRecord]
    nontrivial: int
    fusion: dict[str, dict[str, str]]


class RelationRecord(BaseModel):
    generators: list[int] = Field(..., description="Generators whose product is ±identity")
    sign: int


class CodeReport(BaseModel):
    n_qubits: int
    n_generators: int
    rank: int
    k: int
    degeneracy: int
    relations: list[RelationRecord]
    brute_force_degeneracy: Optional[int] = None
    charges: Optional[ChargeTableResponse] = None
