import os
import sys
from datetime import datetime

from fastapi import APIRouter, HTTPException

from api.models.responses import HealthResponse, SystemStats
from api.routers.solve import get_solver_engine

# Try to import settings, use fallback if not available
try:
    from config.settings import API_VERSION, API_TITLE, API_DESCRIPTION, DATA_DIR, CACHE_DIR, GOLDEN_DIR
    from config.settings import (
        CACHE_TTL, CACHE_MAX_SIZE, DEFAULT_TERMS, LARGE_TERMS_WARNING, MAX_TERMS_CAP,
        EXPAND_CONJUGATES, NUMERIC_PRECISION, ORACLE_MAX_RAMIFICATION, ORACLE_TERMS
    )
except ImportError:
    from pathlib import Path
    API_VERSION = "1.0.0"
    API_TITLE = "Puiseux ODE Solver API"
    API_DESCRIPTION = "Formal Puiseux series solutions of F(y, y') = 0"
    DATA_DIR = Path(__file__).parent.parent.parent / "data"
    CACHE_DIR = DATA_DIR / "cache"
    GOLDEN_DIR = DATA_DIR / "golden"
    CACHE_TTL = 24 * 60 * 60
    CACHE_MAX_SIZE = 500
    DEFAULT_TERMS = None
    LARGE_TERMS_WARNING = 200
    MAX_TERMS_CAP = None
    EXPAND_CONJUGATES = True
    NUMERIC_PRECISION = 100
    ORACLE_MAX_RAMIFICATION = 4
    ORACLE_TERMS = 8
    print("⚠️  Using fallback system settings")

router = APIRouter(prefix="/system", tags=["System"])


@router.get("/health", response_model=HealthResponse)
async def health_check():
    """
    Get system health status.
    """
    try:
        components = {}
        try:
            engine = get_solver_engine()
            engine.run("p^2 - 4*y", terms=2)
            components["solver_engine"] = "healthy"
        except Exception as e:
            components["solver_engine"] = f"error: {str(e)}"

        components["data_directory"] = "healthy" if os.path.exists(DATA_DIR) else "missing"
        components["cache_directory"] = "healthy" if os.path.exists(CACHE_DIR) else "missing"
        components["golden_directory"] = "healthy" if os.path.exists(GOLDEN_DIR) else "missing"
        components["python_version"] = f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}"

        overall_status = "healthy" if all("error" not in status for status in components.values()) else "degraded"
        return HealthResponse(
            status=overall_status,
            timestamp=datetime.utcnow().isoformat(),
            version=API_VERSION,
            components=components
        )

    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error checking system health: {str(e)}")


@router.get("/stats", response_model=SystemStats)
async def get_system_stats():
    """
    Engine counters and cache statistics.
    """
    try:
        return SystemStats(**get_solver_engine().get_system_stats())
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error getting system statistics: {str(e)}")


@router.get("/info")
async def get_system_info():
    """
    Configuration and algorithm bounds.
    """
    try:
        return {
            "api": {
                "title": API_TITLE,
                "version": API_VERSION,
                "description": API_DESCRIPTION
            },
            "solver": {
                "default_terms": DEFAULT_TERMS,
                "finite_bound": "2 (deg_p F - 1) deg_y F + 1",
                "infinity_bound": "max(2 (deg_p F - 1) deg_y F + 1, deg_y F + 1)",
                "large_terms_warning": LARGE_TERMS_WARNING,
                "max_terms_cap": MAX_TERMS_CAP,
                "expand_conjugates": EXPAND_CONJUGATES
            },
            "oracle": {
                "numeric_precision": NUMERIC_PRECISION,
                "max_ramification": ORACLE_MAX_RAMIFICATION,
                "terms": ORACLE_TERMS
            },
            "configuration": {
                "cache_ttl_hours": CACHE_TTL / 3600,
                "cache_max_size": CACHE_MAX_SIZE
            },
            "system": {
                "python_version": f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}",
                "platform": sys.platform
            }
        }

    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error getting system info: {str(e)}")


@router.post("/cache/clear")
async def clear_cache():
    """
    Clear the result cache.
    """
    try:
        cache_manager = get_solver_engine().cache_manager
        stats_before = cache_manager.get_cache_stats()
        removed = cache_manager.clear_cache()
        return {
            "message": "Cache cleared successfully",
            "items_removed": removed,
            "bytes_freed": stats_before['total_size_bytes'],
            "current_items": cache_manager.get_cache_stats()['total_items']
        }

    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error clearing cache: {str(e)}")
