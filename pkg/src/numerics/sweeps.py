"""Order-preserving sweeps over fixed chunks, optionally on a thread pool."""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from src.config import config

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def chunked(items: Sequence[T], size: int) -> List[List[T]]:
    """Split into consecutive chunks of ``size`` items (the last may be shorter)."""
    if size < 1:
        raise ValueError(f"chunk size must be >= 1, got {size}")
    items = list(items)
    return [items[i:i + size] for i in range(0, len(items), size)]


def parallel_map(
    fn: Callable[[T], R],
    items: Sequence[T],
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> List[R]:
    """Apply ``fn`` to every item and return results in input order.

    With ``chunk_size`` the items are grouped into fixed chunks, each chunk is
    processed sequentially by one worker, and the results are flattened in chunk
    order. Chunk composition never depends on ``threads``.
    """
    threads = config.threads if threads is None else max(1, int(threads))
    items = list(items)

    if chunk_size is None:
        if threads <= 1 or len(items) <= 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))

    def run_chunk(chunk: List[T]) -> List[R]:
        return [fn(item) for item in chunk]

    chunks = chunked(items, chunk_size)
    logger.debug(f"Sweeping {len(items)} items in {len(chunks)} chunks on {threads} thread(s)")
    if threads <= 1 or len(chunks) <= 1:
        results = [run_chunk(chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_chunk, chunks))
    return [value for chunk in results for value in chunk]
