"""
Alliance Lab - Main Application
FastAPI application exposing the exact alliance solvers, bound reports and theorem harness.
"""

import logging

from fastapi import FastAPI, Request, status
from fastapi.responses import JSONResponse

from app.config import settings
from app.routes import graphs, solve, verify
from app.utils.exceptions import CertificateError, InputError, NumericError
from app.utils.log_config import configure_logging

configure_logging()
logger = logging.getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title=f"{settings.APP_NAME} API",
    description="Exact solver and bound verifier for (global) defensive k-alliances",
    version=settings.APP_VERSION,
    docs_url="/docs",
    redoc_url="/redoc"
)


# ========== Error handlers ==========

@app.exception_handler(InputError)
async def input_error_handler(request: Request, exc: InputError):
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"status": "error", "detail": str(exc)}
    )


@app.exception_handler(NumericError)
async def numeric_error_handler(request: Request, exc: NumericError):
    logger.error("numeric failure on %s: %s", request.url.path, exc)
    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={"status": "error", "detail": str(exc)}
    )


@app.exception_handler(CertificateError)
async def certificate_error_handler(request: Request, exc: CertificateError):
    logger.error("certificate failure on %s: %s", request.url.path, exc)
    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={"status": "error", "detail": str(exc)}
    )


# Include routers
app.include_router(graphs.router)
app.include_router(solve.router)
app.include_router(verify.router)


# Health check endpoint
@app.get("/ping", tags=["Health"])
async def ping():
    """
    Health check endpoint to verify the API is running.
    Returns a simple pong response.
    """
    return {
        "status": "success",
        "message": "pong",
        "version": settings.APP_VERSION
    }


@app.get("/", tags=["Root"])
async def root():
    """
    Root endpoint with API information.
    """
    return {
        "name": f"{settings.APP_NAME} API",
        "version": settings.APP_VERSION,
        "docs": "/docs",
        "health": "/ping"
    }
