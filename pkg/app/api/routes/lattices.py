"""Lattice routes"""

from fastapi import APIRouter, Query

from app.api.dependencies import as_http_error
from app.api.schemas.lattice import LatticeExport
from app.api.services import lattice_service
from app.errors import RubyCodeError

router = APIRouter(prefix="/api/lattices", tags=["lattices"])


@router.get("/ruby", response_model=LatticeExport)
async def get_ruby_lattice(
    lx: int = Query(1, ge=1, description="Cells along T1"),
    ly: int = Query(1, ge=1, description="Cells along T2"),
):
    """Sites, colored links and faces of a periodic ruby lattice."""
    try:
        return lattice_service.export_lattice(lattice_service.build_ruby(lx, ly))
    except RubyCodeError as exc:
        raise as_http_error(exc) from exc
