"""Worker-pool sizing and order-preserving parallel map."""

import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from .constants import EnvVars

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_worker_count(explicit: int | None = None) -> int:
    """Worker count from the argument, else SUPERALI_THREADS, else 1."""
    if explicit is not None:
        return max(1, explicit)
    raw = os.environ.get(EnvVars.THREADS)
    if raw is None or not raw.strip():
        return 1
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {EnvVars.THREADS}={raw!r}: not an integer")
        return 1
    if value < 1:
        logger.warning(f"Ignoring {EnvVars.THREADS}={value}: must be positive")
        return 1
    return value


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Apply fn to every item; results come back in input order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug(f"Mapping {len(items)} items over {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
