"""API dependencies"""

from fastapi import HTTPException, status

from app.errors import ConvergenceError, InvariantViolation, RubyCodeError


def http_status(error: RubyCodeError) -> int:
    """
    HTTP status for a domain error.
    Bad input is 400, solver trouble 422, broken internal relations 500.
    """
    if isinstance(error, InvariantViolation):
        return status.HTTP_500_INTERNAL_SERVER_ERROR
    if isinstance(error, ConvergenceError):
        return status.HTTP_422_UNPROCESSABLE_ENTITY
    return status.HTTP_400_BAD_REQUEST


def as_http_error(error: RubyCodeError) -> HTTPException:
    return HTTPException(status_code=http_status(error), detail=error.to_dict())
