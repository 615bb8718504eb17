from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar


T = TypeVar("T")
R = TypeVar("R")


def run_blocks(task: Callable[[T], R], blocks: Iterable[T], workers: int = 1) -> list[R]:
    """Maps ``task`` over independent blocks, keeping the input order.

    One worker runs inline in the calling thread.
    """
    blocks = list(blocks)
    if workers <= 1 or len(blocks) <= 1:
        return [task(block) for block in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, blocks))
