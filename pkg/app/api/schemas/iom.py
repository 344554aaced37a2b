"""Integral-of-motion schemas"""

from typing import Literal, Optional

from pydantic import BaseModel, Field


IomKind = Literal["plaquette", "string", "stringnet"]


class IomRecord(BaseModel):
    """One verified integral of motion."""

    kind: IomKind
    label: str = Field(..., description="A/B/C for plaquettes, the colour for strings")
    pauli_text: str
    weight: int
    face: Optional[int] = None
    color: Optional[str] = None
    homology: Optional[tuple[int, int]] = None
    path: list[int] = Field(default_factory=list)
    components: list[str] = Field(default_factory=list)
    hermitian: bool
    squares_to_identity: bool
    commutes_with_hamiltonian: bool


class PlaquetteReport(BaseModel):
    face: int
    color: str
    A: IomRecord
    B: IomRecord
    C: IomRecord
    independent: int
    c_equals_minus_ab: bool


class StringReport(BaseModel):
    path: list[int]
    homology: tuple[int, int]
    strings: list[IomRecord]
    independent: int
    products_close: bool = Field(
        ..., description="The product of any two strings is ± the third"
    )


class StringnetReport(BaseModel):
    net: IomRecord
    anticommuting_terms: list[int]
    commutes_with_hamiltonian: bool
    in_plaquette_span: bool
    decomposition: Optional[list[str]] = None
    sign: Optional[int] = None


class LogicalRelations(BaseModel):
    commuting_pairs: dict[str, bool]
    anticommuting_pairs: dict[str, bool]
    squares: dict[str, bool]


class LogicalReport(BaseModel):
    operators: dict[str, IomRecord]
    relations: LogicalRelations
    choice: str
    cycles: dict[str, list[int]]


class IomReport(BaseModel):
    n_qubits: int
    n_terms: int
    plaquettes: list[PlaquetteReport]
    strings: list[StringReport] = Field(default_factory=list)
    stringnets: list[StringnetReport] = Field(default_factory=list)
    all_verified: bool
