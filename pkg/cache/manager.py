import hashlib
import json
import logging
import os
import pickle
import time
from pathlib import Path

# Try to import settings, use fallback if not available
try:
    from config.settings import CACHE_DIR, CACHE_TTL, CACHE_MAX_SIZE
except ImportError:
    PROJECT_ROOT = Path(__file__).parent.parent
    CACHE_DIR = PROJECT_ROOT / "data" / "cache"
    CACHE_TTL = 24 * 60 * 60
    CACHE_MAX_SIZE = 500
    print("⚠️  Using fallback cache settings")

logger = logging.getLogger(__name__)


def request_key(request):
    """Canonical text of a solve request (dict of JSON-safe values)."""
    return json.dumps(request, sort_keys=True, separators=(",", ":"))


class CacheManager:
    def __init__(self, cache_dir=None, ttl=None, max_size=None):
        """Pickle-file cache of solve results keyed by the canonical request"""
        self.cache_dir = Path(cache_dir or CACHE_DIR)
        self.ttl = CACHE_TTL if ttl is None else ttl
        self.max_size = CACHE_MAX_SIZE if max_size is None else max_size
        os.makedirs(self.cache_dir, exist_ok=True)

    def _get_cache_key(self, request):
        return hashlib.md5(request_key(request).encode()).hexdigest()

    def _get_cache_file_path(self, cache_key):
        return self.cache_dir / f"{cache_key}.pkl"

    def get_cached_result(self, request):
        """Cached result document for a request, or None when absent or expired"""
        cache_file = self._get_cache_file_path(self._get_cache_key(request))
        if not cache_file.exists():
            return None
        try:
            with open(cache_file, 'rb') as f:
                cached_data = pickle.load(f)
            if time.time() - cached_data['timestamp'] < self.ttl:
                return cached_data['result']
            os.remove(cache_file)
        except Exception as e:
            logger.warning("Error reading cache %s: %s", cache_file.name, e)
        return None

    def cache_result(self, request, result):
        self._clean_cache_if_needed()
        cache_file = self._get_cache_file_path(self._get_cache_key(request))
        cached_data = {
            'query': request_key(request),
            'result': result,
            'timestamp': time.time()
        }
        try:
            with open(cache_file, 'wb') as f:
                pickle.dump(cached_data, f)
        except Exception as e:
            logger.warning("Error writing cache %s: %s", cache_file.name, e)

    def _cache_files(self):
        return sorted(self.cache_dir.glob("*.pkl"), key=lambda path: path.stat().st_mtime)

    def _clean_cache_if_needed(self):
        """Drop the oldest entries once the cache is full"""
        try:
            cache_files = self._cache_files()
            excess = len(cache_files) - self.max_size + 1
            for path in cache_files[:max(excess, 0)]:
                path.unlink()
        except Exception as e:
            logger.warning("Error cleaning cache: %s", e)

    def clear_cache(self):
        removed = 0
        for path in self._cache_files():
            path.unlink()
            removed += 1
        return removed

    def get_cache_stats(self):
        try:
            cache_files = self._cache_files()
            total_size = sum(path.stat().st_size for path in cache_files)
        except Exception as e:
            logger.warning("Error getting cache stats: %s", e)
            cache_files, total_size = [], 0
        return {
            'total_items': len(cache_files),
            'total_size_bytes': total_size,
            'max_size': self.max_size,
            'ttl_hours': self.ttl / 3600
        }
