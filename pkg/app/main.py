"""Ruby Color Code API"""

from contextlib import asynccontextmanager

from fastapi import FastAPI

from app.config import APP_NAME, APP_VERSION, configure_logging
from app.api.routes import charges, lattices, tasks


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan events."""
    configure_logging()
    yield


app = FastAPI(
    title=APP_NAME,
    version=APP_VERSION,
    lifespan=lifespan,
)


app.include_router(tasks.router)
app.include_router(lattices.router)
app.include_router(charges.router)


@app.get("/api/health")
async def health():
    """Liveness check."""
    return {"status": "ok", "version": APP_VERSION}
