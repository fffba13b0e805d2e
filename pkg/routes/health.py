"""
Health Endpoint
Liveness plus the active solver guardrails
"""
import time

from fastapi import APIRouter, Request

from config import get_settings

router = APIRouter()

API_VERSION = "1.0.0"


@router.get("/health")
def health_check(request: Request):
    """Service status, uptime and the settings that bound exact computation."""
    settings = get_settings()
    start_time = getattr(request.app.state, "start_time", None)
    return {
        "status": "ok",
        "version": API_VERSION,
        "timestamp": time.time(),
        "uptime_seconds": time.time() - start_time if start_time else 0,
        "settings": {
            "enumeration_cap": settings.enumeration_cap,
            "best_response_max_agents": settings.best_response_max_agents,
            "tolerance": settings.tolerance,
            "default_num_samples": settings.default_num_samples,
        },
    }
