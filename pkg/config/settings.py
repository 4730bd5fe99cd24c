import os
from pathlib import Path

# Paths
PROJECT_ROOT = Path(__file__).parent.parent
DATA_DIR = PROJECT_ROOT / "data"
CACHE_DIR = DATA_DIR / "cache"
CELERY_RESULTS_DIR = DATA_DIR / "celery_results"
GOLDEN_DIR = DATA_DIR / "golden"

# API
API_HOST = os.getenv("API_HOST", "0.0.0.0")
API_PORT = int(os.getenv("API_PORT", "8080"))
API_TITLE = "Puiseux ODE Solver API"
API_DESCRIPTION = (
    "Exact formal Puiseux series solutions of autonomous first-order "
    "algebraic ODEs F(y, y') = 0, around a finite point or at infinity"
)
API_VERSION = "1.0.0"

# Celery (in-memory broker, no external services)
CELERY_BROKER_URL = os.getenv("CELERY_BROKER_URL", "memory://")
CELERY_RESULT_BACKEND = os.getenv("CELERY_RESULT_BACKEND", "cache+memory://")
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"
CELERY_ACCEPT_CONTENT = ["json"]
CELERY_TIMEZONE = "UTC"
CELERY_ENABLE_UTC = True
TASK_TIMEOUT = int(os.getenv("TASK_TIMEOUT", "600"))

# Result cache
CACHE_TTL = int(os.getenv("CACHE_TTL", str(24 * 3600)))
CACHE_MAX_SIZE = int(os.getenv("CACHE_MAX_SIZE", "500"))

# Solver
# None means the degree bound of the algorithm being run
DEFAULT_TERMS = int(os.environ["DEFAULT_TERMS"]) if os.getenv("DEFAULT_TERMS") else None
LARGE_TERMS_WARNING = 200
MAX_TERMS_CAP = int(os.environ["MAX_TERMS_CAP"]) if os.getenv("MAX_TERMS_CAP") else None
EXPAND_CONJUGATES = True
MAX_SPLIT_REPLAYS = int(os.getenv("MAX_SPLIT_REPLAYS", "4096"))

# Oracle / numeric checks
NUMERIC_PRECISION = 100
NUMERIC_SAMPLE = "1/10000"
PARAMETER_SAMPLE = "1/7"
ORACLE_MAX_RAMIFICATION = 4
ORACLE_TERMS = 8

# Logging (stderr, so --json output on stdout stays clean)
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
