"""Work-item execution on a thread pool."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_WORKERS = min(8, os.cpu_count() or 1)


def run_work_items(
    fn: Callable[[T], R],
    items: Iterable[T],
    max_workers: int | None = None,
) -> list[R]:
    """Apply ``fn`` to every item, returning results in submission order.

    Work items must not share mutable state; ordering of the results does not
    depend on completion order, so runs are reproducible.

    Args:
        fn: Function applied to each item
        items: Work items
        max_workers: Pool size (1 runs inline)

    Returns:
        List of results, one per item
    """
    items = list(items)
    workers = DEFAULT_WORKERS if max_workers is None else max_workers
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    logger.debug("running %d work items on %d workers", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
