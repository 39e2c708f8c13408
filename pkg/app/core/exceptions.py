import logging
from typing import Any, Dict, Optional

from fastapi import Request, HTTPException
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

logger = logging.getLogger(__name__)

# Exit codes shared by the CLI and the API status mapping
EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class TamError(Exception):
    """Base class of every domain error raised by the analyzer."""
    code: int = EXIT_DOMAIN

    def __init__(self, message: str = "", **details: Any):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.details: Dict[str, Any] = details

    @property
    def name(self) -> str:
        return self.__class__.__name__

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.name, "message": self.message, "details": self.details}


class UsageError(TamError):
    code = EXIT_USAGE


class SearchBudgetExceeded(TamError):
    code = EXIT_BUDGET


# Tile system definition
class SystemDefinitionError(TamError):
    pass

class DuplicateTileName(SystemDefinitionError):
    pass

class UnknownSeedTile(SystemDefinitionError):
    pass

class DisconnectedSeed(SystemDefinitionError):
    pass

class BadStrength(SystemDefinitionError):
    pass


# Assemblies
class AssemblyError(TamError):
    pass

class OccupiedPosition(AssemblyError):
    pass

class ConflictingOverlap(AssemblyError):
    pass

class DisjointUnbound(AssemblyError):
    pass

class EmptyAssembly(AssemblyError):
    pass


# Paths
class PathError(TamError):
    pass

class RepeatedPosition(PathError):
    pass

class NonAdjacentStep(PathError):
    pass

class NonBindingStep(PathError):
    pass

class NoBond(PathError):
    pass

class Intersection(PathError):
    pass

class TooShort(PathError):
    pass

class BadPrefix(PathError):
    pass

class EmptySet(PathError):
    pass

class MixedOrigins(PathError):
    pass

class BadIndex(PathError):
    pass

class BadIndices(PathError):
    pass


# System state
class SystemStateError(TamError):
    pass

class SystemNotFinite(SystemStateError):
    pass

class SystemNotDirected(SystemStateError):
    pass


# Geometry
class GeometryError(TamError):
    pass

class ColumnOutOfRange(GeometryError):
    pass

class NoGlueOnColumn(GeometryError):
    pass

class NoVisibleGlue(GeometryError):
    pass

class NotACut(GeometryError):
    pass

class CorkCrossed(GeometryError):
    pass

class NotClosed(GeometryError):
    pass

class BadWindow(GeometryError):
    pass

class ColumnOutOfWindow(GeometryError):
    pass


# Constructions
class PreconditionViolated(TamError):
    pass

class NoExtremalPath(TamError):
    pass

class NotAShield(TamError):
    def __init__(self, bullet: int, message: str = "", **details: Any):
        super().__init__(message or f"shield condition {bullet} violated", bullet=bullet, **details)
        self.bullet = bullet


# Harness
class ConfigTooLarge(TamError):
    pass

class UnknownLemma(TamError):
    pass


def http_status_for(exc: TamError) -> int:
    if isinstance(exc, SearchBudgetExceeded):
        return 503
    if isinstance(exc, UsageError):
        return 400
    return 422


async def tam_error_handler(request: Request, exc: TamError):
    """Handle domain errors"""
    logger.warning(f"Domain error: {exc.name} - {exc.message}")
    return JSONResponse(
        status_code=http_status_for(exc),
        content={"error": exc.name, "details": {"message": exc.message, **_jsonable(exc.details)}}
    )

async def http_exception_handler(request: Request, exc: HTTPException):
    """Handle HTTP exceptions"""
    logger.warning(f"HTTP exception: {exc.status_code} - {exc.detail}")
    return JSONResponse(
        status_code=exc.status_code,
        content={"error": exc.detail, "status_code": exc.status_code}
    )

async def validation_exception_handler(request: Request, exc: RequestValidationError):
    """Handle validation errors"""
    logger.warning(f"Validation error: {exc}")
    return JSONResponse(
        status_code=422,
        content={"error": "Validation error", "details": exc.errors()}
    )

async def generic_exception_handler(request: Request, exc: Exception):
    """Handle generic exceptions"""
    logger.error(f"Unhandled exception: {exc}", exc_info=True)
    return JSONResponse(
        status_code=500,
        content={"error": "Internal server error", "details": str(exc)}
    )


def _jsonable(details: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for key, value in (details or {}).items():
        if isinstance(value, tuple):
            value = list(value)
        elif not isinstance(value, (str, int, float, bool, list, dict, type(None))):
            value = str(value)
        out[key] = value
    return out
