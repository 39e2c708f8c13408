import logging
from typing import Any, Dict

from fastapi import APIRouter, HTTPException, status
from fastapi.responses import PlainTextResponse, Response

from app.core.exceptions import TamError
from app.core.models import (
    CanonicalRequest,
    CutsRequest,
    DecomposeRequest,
    OutputFormat,
    PathsRequest,
    RenderRequest,
    RunRequest,
    ShieldRequest,
    SystemRequest,
    VerifyRequest,
)
from app.core.services import analysis_service

logger = logging.getLogger(__name__)
router = APIRouter()
router.tags = ['Analysis']


def _failed(command: str, e: Exception) -> HTTPException:
    logger.error(f"Error in {command}: {e}", exc_info=True)
    return HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=f"{command} failed: {e}")


@router.post("/classify", summary="Classify a tile system",
             description="Finite, infinite or non-directed, decided with the classification bound")
async def classify(request: SystemRequest) -> Dict[str, Any]:
    try:
        return analysis_service.classify(request.system)
    except (HTTPException, TamError):
        raise
    except Exception as e:
        raise _failed("classify", e)


@router.post("/run", summary="Saturate a tile system", description="Saturation with an explicit cap per axis")
async def run(request: RunRequest) -> Dict[str, Any]:
    try:
        return analysis_service.run(request.system, request.budget)
    except (HTTPException, TamError):
        raise
    except Exception as e:
        raise _failed("run", e)


@router.post("/paths", summary="Enumerate producible paths")
async def paths(request: PathsRequest) -> Dict[str, Any]:
    try:
        return analysis_service.paths(request.system, request.max_len)
    except (HTTPException, TamError):
        raise
    except Exception as e:
        raise _failed("paths", e)


@router.post("/cuts", summary="List the cuts of a path", description="Every cut with its visible/minimal/minimum flags")
async def cuts(request: CutsRequest) -> Dict[str, Any]:
    try:
        return analysis_service.cuts(request.system, request.path, request.budget)
    except (HTTPException, TamError):
        raise
    except Exception as e:
        raise _failed("cuts", e)


@router.post("/decompose", summary="Span or dominant-arc decomposition on a column")
async def decompose(request: DecomposeRequest) -> Dict[str, Any]:
    try:
        return analysis_service.decompose(request.system, request.column, request.path, request.side,
                                          request.arcs, request.budget)
    except (HTTPException, TamError):
        raise
    except Exception as e:
        raise _failed("decompose", e)


@router.post("/canonical", summary="Canonical path of a column")
async def canonical(request: CanonicalRequest) -> Dict[str, Any]:
    try:
        return analysis_service.canonical(request.system, request.column, request.strict, request.budget)
    except (HTTPException, TamError):
        raise
    except Exception as e:
        raise _failed("canonical", e)


@router.post("/shield", summary="Verify a candidate shield")
async def shield(request: ShieldRequest) -> Dict[str, Any]:
    try:
        return analysis_service.shield(request.system, request.path, request.column, request.s_index,
                                       request.candidate, request.shield_column)
    except (HTTPException, TamError):
        raise
    except Exception as e:
        raise _failed("shield", e)


@router.post("/verify", summary="Run registered statement checks",
             description="Runs a check id, a suite or 'all' over fixtures and sampled systems")
async def verify(request: VerifyRequest) -> Dict[str, Any]:
    try:
        return analysis_service.verify(request.suite, request.samples, request.rng_seed, request.budget,
                                       exhaustive=request.exhaustive, max_tiles=request.max_tiles,
                                       alphabet_size=request.alphabet_size)
    except (HTTPException, TamError):
        raise
    except Exception as e:
        raise _failed("verify", e)


@router.post("/render", summary="Draw an assembly")
async def render(request: RenderRequest):
    try:
        doc = analysis_service.render(request.system, request.path, request.format)
    except (HTTPException, TamError):
        raise
    except Exception as e:
        raise _failed("render", e)
    if request.format is OutputFormat.SVG:
        return Response(content=doc, media_type="image/svg+xml")
    if request.format is OutputFormat.ASCII:
        return PlainTextResponse(doc)
    return doc
