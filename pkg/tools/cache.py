"""Memoization of solved states and other expensive computations"""

import hashlib
import json
import time
from functools import wraps
from typing import Any, Dict, Optional

from core.config import CACHE_TTL
from observability.logging import get_logger

logger = get_logger(__name__)

# In-process only; cached values are shared, never copied
_cache: Dict[str, Dict[str, Any]] = {}
_stats = {"hits": 0, "misses": 0}


def _make_cache_key(*args, **kwargs) -> str:
    """Creates cache key from arguments."""
    key_data = {
        "args": args,
        "kwargs": sorted(kwargs.items())
    }
    key_str = json.dumps(key_data, sort_keys=True, default=str)
    return hashlib.md5(key_str.encode()).hexdigest()


def cache_result(ttl: int = CACHE_TTL):
    """Decorator caching a function's result per argument tuple.

    Args:
        ttl: Time to live in seconds
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            cache_key = f"{func.__name__}:{_make_cache_key(*args, **kwargs)}"

            cached = _cache.get(cache_key)
            if cached is not None:
                if time.time() - cached["timestamp"] < ttl:
                    _stats["hits"] += 1
                    logger.debug(f"Cache hit for {func.__name__}", event_type="cache_hit", function=func.__name__)
                    return cached["value"]
                del _cache[cache_key]

            _stats["misses"] += 1
            result = func(*args, **kwargs)
            _cache[cache_key] = {
                "value": result,
                "timestamp": time.time(),
                "ttl": ttl,
            }
            logger.debug(f"Cached result for {func.__name__}", event_type="cache_store", function=func.__name__)
            return result

        return wrapper
    return decorator


def clear_cache(pattern: Optional[str] = None) -> int:
    """Clears cached entries, all of them or those whose key contains ``pattern``.

    Returns:
        Number of entries removed
    """
    if pattern:
        keys_to_delete = [k for k in _cache if pattern in k]
    else:
        keys_to_delete = list(_cache)
    for key in keys_to_delete:
        del _cache[key]
    logger.info(f"Cleared {len(keys_to_delete)} cache entries", event_type="cache_clear", pattern=pattern)
    return len(keys_to_delete)


def get_cache_stats() -> Dict[str, Any]:
    """Returns cache statistics."""
    now = time.time()
    valid_entries = sum(1 for v in _cache.values() if now - v["timestamp"] < v["ttl"])
    return {
        "total_entries": len(_cache),
        "valid_entries": valid_entries,
        "expired_entries": len(_cache) - valid_entries,
        "hits": _stats["hits"],
        "misses": _stats["misses"],
    }
