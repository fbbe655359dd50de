"""
Translation of toolkit errors into HTTP responses
"""
import logging
from typing import NoReturn

from fastapi import HTTPException, status

from app.common.errors import ChordError, GraphInputError, PreconditionError, SearchFailure, VerificationError

logger = logging.getLogger(__name__)


def status_for(error: ChordError) -> int:
    if isinstance(error, (GraphInputError, PreconditionError)):
        return status.HTTP_400_BAD_REQUEST
    if isinstance(error, SearchFailure):
        return status.HTTP_422_UNPROCESSABLE_ENTITY
    if isinstance(error, VerificationError):
        return status.HTTP_500_INTERNAL_SERVER_ERROR
    return status.HTTP_500_INTERNAL_SERVER_ERROR


def raise_http(error: ChordError) -> NoReturn:
    """Re-raise a toolkit error as an HTTPException carrying its payload."""
    code = status_for(error)
    if code >= 500:
        logger.error(f"Internal error: {error.message}", exc_info=True)
    raise HTTPException(status_code=code, detail=error.to_dict()) from error
