"""Tests for the HTTP routes."""

import pytest


@pytest.mark.asyncio
class TestTasks:
    """Tests for POST /api/tasks/{task}."""

    async def test_validate_with_defaults(self, client):
        resp = await client.post("/api/tasks/validate")
        assert resp.status_code == 200
        data = resp.json()
        assert data["task"] == "validate"
        assert data["result"]["ruby"]["valid"] is True

    async def test_toric_code(self, client):
        resp = await client.post(
            "/api/tasks/code", json={"lattice": {"type": "square", "L": 4}}
        )
        assert resp.status_code == 200
        assert resp.json()["result"]["code"]["k"] == 2

    async def test_lattice_error_is_bad_request(self, client):
        resp = await client.post(
            "/api/tasks/code", json={"lattice": {"type": "square", "L": 3}}
        )
        assert resp.status_code == 400
        assert resp.json()["detail"]["error"] == "lattice"

    async def test_zero_size_is_rejected(self, client):
        resp = await client.post("/api/tasks/validate", json={"lattice": {"Lx": 0}})
        assert resp.status_code == 422

    async def test_unknown_task(self, client):
        resp = await client.post("/api/tasks/plot")
        assert resp.status_code == 422


@pytest.mark.asyncio
class TestLattices:
    """Tests for GET /api/lattices/ruby."""

    async def test_export(self, client):
        resp = await client.get("/api/lattices/ruby", params={"lx": 1, "ly": 2})
        assert resp.status_code == 200
        data = resp.json()
        assert data["n_sites"] == 36
        assert len(data["edges"]) == 72

    async def test_rejects_zero(self, client):
        resp = await client.get("/api/lattices/ruby", params={"lx": 0})
        assert resp.status_code == 422


@pytest.mark.asyncio
class TestCharges:
    """Tests for GET /api/charges/{family}."""

    async def test_toric(self, client):
        resp = await client.get("/api/charges/toric")
        assert resp.status_code == 200
        assert resp.json()["nontrivial"] == 3

    async def test_color(self, client):
        resp = await client.get("/api/charges/color")
        assert resp.status_code == 200
        assert resp.json()["fusion"]["x:red"]["x:green"] == "x:blue"

    async def test_unknown_family(self, client):
        resp = await client.get("/api/charges/surface")
        assert resp.status_code == 422


@pytest.mark.asyncio
async def test_health(client):
    resp = await client.get("/api/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"
