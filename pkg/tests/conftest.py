"""Shared test fixtures and configuration."""

import pytest
import pytest_asyncio
from httpx import ASGITransport, AsyncClient

from app.api.services import hamiltonian_service, lattice_service
from app.api.services.hamiltonian_service import Couplings


@pytest.fixture(scope="session")
def ruby11():
    """Smallest periodic ruby lattice: 18 sites, 6 triangles."""
    return lattice_service.build_ruby(1, 1)


@pytest.fixture(scope="session")
def colex11(ruby11):
    """The 3-face honeycomb colex obtained by contracting ruby(1,1)."""
    return lattice_service.contract_triangles(ruby11)


@pytest.fixture(scope="session")
def h11(ruby11):
    """Two-body Hamiltonian on ruby(1,1) with unit couplings."""
    return hamiltonian_service.build_two_body(ruby11, Couplings(1.0, 1.0, 1.0))


@pytest.fixture(scope="session")
def square4():
    return lattice_service.build_square(4)


@pytest_asyncio.fixture
async def client():
    """Async HTTP test client using httpx."""
    from app.main import app

    transport = ASGITransport(app=app)
    async with AsyncClient(transport=transport, base_url="http://testserver") as ac:
        yield ac
