"""
Prophet Game Service
HTTP surface over the order-statistic, threshold, SPE and certification engines
"""
import time
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from config import get_settings
from core_model.errors import CapabilityError, ConfigInvalidError, ProphetError
from observability import configure_logging, get_logger
from routes import analysis, health
from routes.health import API_VERSION

logger = get_logger("app")


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan: startup and shutdown"""
    configure_logging()
    settings = get_settings()
    app.state.settings = settings
    app.state.start_time = time.time()
    logger.info("Starting prophet game service", {
        "enumeration_cap": settings.enumeration_cap,
        "best_response_max_agents": settings.best_response_max_agents,
    })

    yield

    logger.info("Shutting down prophet game service")


app = FastAPI(
    title="Prophet Game Engine",
    version=API_VERSION,
    description="Threshold strategies, worst-case guarantees and equilibria of the multi-agent prophet game",
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.middleware("http")
async def log_requests(request: Request, call_next):
    """Log every request with its latency"""
    start_time = time.time()
    response = await call_next(request)
    logger.debug(f"{request.method} {request.url.path} -> {response.status_code}", {
        "latency_ms": round((time.time() - start_time) * 1000, 2),
    })
    return response


app.include_router(analysis.router, prefix="/api/v1", tags=["Analysis"])
app.include_router(health.router, prefix="", tags=["Health"])


@app.get("/")
async def root():
    return {
        "name": "Prophet Game Engine",
        "version": API_VERSION,
        "endpoints": {
            "docs": "/docs",
            "health": "/health",
            "order_stats": "/api/v1/order-stats",
            "thresholds": "/api/v1/thresholds",
            "spe": "/api/v1/spe",
            "certify": "/api/v1/certify",
            "scenarios": "/api/v1/scenarios/run",
        },
    }


def _error_response(status_code: int, request: Request, exc: ProphetError) -> JSONResponse:
    return JSONResponse(
        status_code=status_code,
        content={"detail": str(exc), "type": type(exc).__name__, "path": str(request.url.path)},
    )


@app.exception_handler(ConfigInvalidError)
async def config_error_handler(request: Request, exc: ConfigInvalidError):
    return _error_response(422, request, exc)


@app.exception_handler(CapabilityError)
async def capability_error_handler(request: Request, exc: CapabilityError):
    return _error_response(409, request, exc)


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """Handle all unhandled exceptions"""
    logger.log_error_with_context(exc, {"method": request.method, "path": str(request.url)})
    return JSONResponse(
        status_code=500,
        content={"detail": "Internal server error", "type": type(exc).__name__, "path": str(request.url.path)},
    )


if __name__ == "__main__":
    import uvicorn

    settings = get_settings()
    uvicorn.run(
        "main:app",
        host=settings.host,
        port=settings.port,
        reload=False,
        log_level=settings.log_level.lower(),
    )
