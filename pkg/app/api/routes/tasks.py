"""Task routes"""

from typing import Optional

from fastapi import APIRouter
from fastapi.concurrency import run_in_threadpool

from app.api.dependencies import as_http_error
from app.api.schemas.run import RunConfig, RunReport, TaskName, TaskRequest
from app.api.services import task_service
from app.errors import RubyCodeError

router = APIRouter(prefix="/api/tasks", tags=["tasks"])


@router.post("/{task}", response_model=RunReport)
async def run_task(task: TaskName, request: Optional[TaskRequest] = None):
    """
    Run one task and return the same report envelope the CLI writes.
    """
    request = request or TaskRequest()
    config = RunConfig(task=task, **request.model_dump())
    try:
        return await run_in_threadpool(task_service.run_task, config)
    except RubyCodeError as exc:
        raise as_http_error(exc) from exc
