"""
Block partitioning and ordered map over a process pool.

Work is split into disjoint contiguous blocks, mapped (serially or on a
ProcessPoolExecutor) and gathered back in block order, so results never
depend on the number of workers.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

from .errors import InvalidArgumentError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def partition(lo: int, hi: int, block_size: int) -> list[tuple[int, int]]:
    """Split the closed range [lo, hi] into consecutive (start, end) blocks."""
    if block_size < 1:
        raise InvalidArgumentError(f"block_size must be positive, got {block_size}")
    return [(start, min(start + block_size - 1, hi)) for start in range(lo, hi + 1, block_size)]


def map_blocks(func: Callable[..., T], blocks: Sequence[tuple], workers: int = 1) -> list[T]:
    """Apply ``func(*block)`` to every block, returning results in block order.

    ``func`` must be a module-level callable (or a functools.partial of one)
    when workers > 1, since it is pickled into worker processes.
    """
    if workers <= 1 or len(blocks) <= 1:
        return [func(*block) for block in blocks]

    workers = min(workers, len(blocks))
    logger.info(f"Dispatching {len(blocks)} blocks to {workers} worker processes")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, *zip(*blocks)))
