"""Charge routes"""

from fastapi import APIRouter

from app.api.schemas.code import ChargeTableResponse, CodeFamily
from app.api.services import code_service

router = APIRouter(prefix="/api/charges", tags=["charges"])


@router.get("/{family}", response_model=ChargeTableResponse)
async def get_charge_table(family: CodeFamily):
    """Topological charges of the toric or color code with their fusion table."""
    return code_service.charge_table(family)
