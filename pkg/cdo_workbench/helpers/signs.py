from typing import Sequence


def sort_with_sign(indices: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sorts an index sequence, returning the sign of the sorting permutation.

    The sign is 0 when an index repeats, the value of an alternating map there.
    """
    items = list(indices)
    sign = 1
    # insertion sort, one transposition per swap
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            return 0, tuple(items)
    return sign, tuple(items)


def parity_sign(k: int) -> int:
    return -1 if k % 2 else 1
