import uvicorn
import logging

from fastapi import FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.middleware.gzip import GZipMiddleware

# In house imports
from app.config import settings
from app.core import exceptions
from app.routers import health, analysis
from app.logging_config import configure_logging

configure_logging()
logger = logging.getLogger(__name__)

api_context = settings.API_CONTEXT


def get_application() -> FastAPI:
    """ Creates and configures a FastAPI application instance. """

    application: FastAPI = FastAPI(
        title='Tile Assembly Path Analyzer',
        description='Temperature-1 tile assembly classification and path analysis',
        version='V1',
        openapi_url=f'/{api_context}/openapi.json',
        docs_url=f'/{api_context}/docs',
        redoc_url=f'/{api_context}/redoc'
    )

    application.add_middleware(GZipMiddleware)

    application.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    application.include_router(analysis.router, prefix=f'/{api_context}')
    application.include_router(health.router, prefix=f'/{api_context}')

    application.add_exception_handler(exceptions.TamError, exceptions.tam_error_handler)
    application.add_exception_handler(HTTPException, exceptions.http_exception_handler)
    application.add_exception_handler(RequestValidationError, exceptions.validation_exception_handler)
    application.add_exception_handler(Exception, exceptions.generic_exception_handler)

    logger.info('Tile Assembly Path Analyzer is up and running')

    return application


app = get_application()

# Main method to run the application on http://localhost:5000/tam/
if __name__ == "__main__":
    uvicorn.run("app.main:app", host="127.0.0.1", port=5000, log_level="info", reload=True)
