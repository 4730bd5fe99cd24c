import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from algebra.errors import DegenerateEquationError, ParseError, SolverError, VerificationError
from api.models.requests import SolveMode
from api.routers import solve, system
from config.log_setup import setup_logging

# Try to import settings, use fallback if not available
try:
    from config.settings import API_TITLE, API_DESCRIPTION, API_VERSION
    from config.settings import DATA_DIR, CACHE_DIR, CELERY_RESULTS_DIR, GOLDEN_DIR
except ImportError:
    API_TITLE = "Puiseux ODE Solver API"
    API_DESCRIPTION = "Formal Puiseux series solutions of F(y, y') = 0"
    API_VERSION = "1.0.0"
    DATA_DIR = Path(__file__).parent.parent / "data"
    CACHE_DIR = DATA_DIR / "cache"
    CELERY_RESULTS_DIR = DATA_DIR / "celery_results"
    GOLDEN_DIR = DATA_DIR / "golden"
    print("⚠️  Using fallback API configuration")

for directory in [DATA_DIR, CACHE_DIR, CELERY_RESULTS_DIR, GOLDEN_DIR]:
    os.makedirs(directory, exist_ok=True)

app = FastAPI(
    title=API_TITLE,
    description=API_DESCRIPTION,
    version=API_VERSION,
    docs_url="/docs",
    redoc_url="/redoc"
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(solve.router)
app.include_router(system.router)


@app.get("/")
async def root():
    """Entry document: where to solve and what the service accepts"""
    return {
        "message": API_TITLE,
        "version": API_VERSION,
        "docs": "/docs",
        "health": "/system/health",
        "solve": "/solve/",
        "modes": [mode.value for mode in SolveMode],
        "equation_syntax": "polynomial in y and p = y' with + - * ^ and rational constants, e.g. p^2 - 4*y",
    }


def solver_error_details(exc):
    """Extra fields a client can act on, per error type"""
    if isinstance(exc, ParseError):
        return {"position": exc.position, "pointer": exc.pointer()}
    if isinstance(exc, DegenerateEquationError):
        return {"removed_factors": exc.removed_factors}
    if isinstance(exc, VerificationError):
        return {"failures": [str(failure) for failure in exc.failures]}
    return {}


@app.exception_handler(SolverError)
async def solver_exception_handler(request: Request, exc: SolverError):
    if isinstance(exc, ParseError):
        status_code = 422
    elif isinstance(exc, VerificationError):
        status_code = 500
    else:
        status_code = 400
    return JSONResponse(
        status_code=status_code,
        content={
            "error": type(exc).__name__,
            "message": str(exc),
            "details": {"path": str(request.url), **solver_error_details(exc)}
        }
    )


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    return JSONResponse(
        status_code=500,
        content={
            "error": "Internal Server Error",
            "message": str(exc),
            "details": {
                "path": str(request.url),
                "method": request.method
            }
        }
    )


@app.on_event("startup")
async def startup_event():
    setup_logging()
    print(f"🚀 Starting {API_TITLE} v{API_VERSION}")
    print("API Documentation: http://localhost:8080/docs")


@app.on_event("shutdown")
async def shutdown_event():
    print(f"Shutting down {API_TITLE}")


if __name__ == "__main__":
    import uvicorn

    try:
        from config.settings import API_HOST, API_PORT
    except ImportError:
        API_HOST = "0.0.0.0"
        API_PORT = 8080

    uvicorn.run("api.app:app", host=API_HOST, port=API_PORT, reload=True, log_level="info")
