"""Lattice schemas"""

from typing import Literal, Optional

from pydantic import BaseModel, Field


EdgeColor = Literal["red", "green", "blue"]
FaceKind = Literal["triangle", "square", "hexagon"]


class SiteRecord(BaseModel):
    """One ruby site."""

    index: int
    cell: tuple[int, int]
    sublattice: int = Field(..., ge=0, le=17)
    triangle: int
    faces_color: EdgeColor = Field(
        ..., description="Colour of the hexagon this site belongs to"
    )


class EdgeRecord(BaseModel):
    a: int
    b: int
    color: EdgeColor
    offset: tuple[int, int] = Field(
        ..., description="Torus winding picked up going from a to b, in cell units"
    )


class FaceRecord(BaseModel):
    kind: FaceKind
    sites: list[int]
    edges: list[int]
    color: Optional[EdgeColor] = None


class LatticeExport(BaseModel):
    """Full ruby lattice export."""

    lattice: Literal["ruby"] = "ruby"
    Lx: int
    Ly: int
    n_sites: int
    sites: list[SiteRecord]
    edges: list[EdgeRecord]
    triangles: list[tuple[int, int, int]]
    faces: list[FaceRecord]


class ViolationRecord(BaseModel):
    code: str
    message: str
    items: list[int] = Field(default_factory=list)


class ValidationResponse(BaseModel):
    """Result of validating a lattice."""

    lattice: str
    counts: dict[str, int]
    euler_characteristic: int
    valid: bool
    violations: list[ViolationRecord]
