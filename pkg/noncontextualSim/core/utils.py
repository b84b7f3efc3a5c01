"""
Caching and timing helpers shared by the simulation apps
"""
from functools import wraps
from django.core.cache import cache
from typing import Any, Callable
import hashlib
import json
import logging
import time

logger = logging.getLogger(__name__)


def cache_result(timeout=None, key_prefix: str = ''):
    """
    Decorator to cache function results in the configured Django cache

    Arguments exposing a ``digest`` attribute (Hamiltonians) are keyed by
    that digest, so equal content shares one entry.

    Args:
        timeout: Cache timeout in seconds (None keeps entries until evicted)
        key_prefix: Custom prefix for cache key
    """
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            # Generate cache key from function name and arguments
            key_parts = [key_prefix or func.__name__]

            for arg in args:
                if hasattr(arg, 'digest'):
                    key_parts.append(str(arg.digest))
                else:
                    key_parts.append(str(arg))

            if kwargs:
                kwargs_str = json.dumps(kwargs, sort_keys=True, default=str)
                kwargs_hash = hashlib.md5(kwargs_str.encode()).hexdigest()[:8]
                key_parts.append(kwargs_hash)

            cache_key = ':'.join(key_parts)

            result = cache.get(cache_key)
            if result is not None:
                return result

            result = func(*args, **kwargs)
            cache.set(cache_key, result, timeout)

            return result
        return wrapper
    return decorator


def log_duration(threshold: float = 1.0):
    """Log calls that take longer than ``threshold`` seconds"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                duration = time.perf_counter() - start
                if duration > threshold:
                    logger.warning(f"Slow call: {func.__module__}.{func.__qualname__} took {duration:.2f}s")
                else:
                    logger.debug(f"{func.__qualname__} took {duration:.4f}s")
        return wrapper
    return decorator
