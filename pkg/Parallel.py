"""
Parallel.py
Shared thread pool for grid and spectral-batch evaluation
Last updated: 2026-10-19

Worker count comes from the NONLOCAL_IST_THREADS environment variable
(0 or unset = os.cpu_count(), 1 = run serially in the caller's thread).
The pool is created lazily and shut down at interpreter exit.

Evaluators passed to parallel_map must be pure: they are called concurrently
and their results are returned in input order.
"""

import atexit
import logging
import os
import threading
from concurrent.futures import ThreadPoolExecutor

import Config

logger = logging.getLogger(__name__)

_executor = None
_executor_lock = threading.Lock()
_thread_override = None


# =============================================================================
# THREAD COUNT
# =============================================================================

def thread_count():
    """Resolve the worker count.

    Returns:
        int >= 1

    Examples:
        NONLOCAL_IST_THREADS unset → os.cpu_count()
        NONLOCAL_IST_THREADS=1     → 1 (serial)
    """
    if _thread_override is not None:
        requested = _thread_override
    else:
        raw = os.environ.get(Config.THREADS_ENV_VAR, '0').strip() or '0'
        try:
            requested = int(raw)
        except ValueError as e:
            raise ValueError(
                f"{Config.THREADS_ENV_VAR}={raw!r} is not an integer.  "
                f"Use 0 for automatic or a positive worker count."
            ) from e
    if requested < 0:
        raise ValueError(f"Thread count must be >= 0, got {requested}")
    if requested == 0:
        return os.cpu_count() or 1
    return requested


def set_thread_count(n):
    """Override the environment setting (CLI --threads).  Resets the pool."""
    global _thread_override
    _thread_override = n
    _shutdown_executor()


# =============================================================================
# EXECUTOR
# =============================================================================

def get_executor():
    """Get or create the global thread pool executor."""
    global _executor
    with _executor_lock:
        if _executor is None:
            workers = thread_count()
            logger.debug(f"Starting thread pool with {workers} workers")
            _executor = ThreadPoolExecutor(max_workers=workers)
        return _executor


def _shutdown_executor():
    global _executor
    with _executor_lock:
        if _executor is not None:
            _executor.shutdown(wait=True)
            _executor = None


atexit.register(_shutdown_executor)


def parallel_map(fn, items):
    """Apply fn to every item, in parallel when more than one worker is allowed.

    Args:
        fn: Pure callable of one argument
        items: Iterable of arguments

    Returns:
        list of results in input order
    """
    items = list(items)
    if len(items) <= 1 or thread_count() == 1:
        return [fn(item) for item in items]
    return list(get_executor().map(fn, items))
