import heapq
import logging
from typing import Iterable, Optional

from fuzzywuzzy import fuzz as ft_search


logger = logging.getLogger(__name__)

MINIMAL_MATCH_SCORE = 60


def closest_name(requested: str, known: Iterable[str]) -> Optional[str]:
    """Closest known name by fuzzy ratio, or None if nothing is close enough."""
    values = [(name, ft_search.ratio(requested.lower(), name.lower())) for name in known]
    if not values:
        return None
    values = heapq.nlargest(2, values, key=lambda i: i[1])
    if values[0][1] < MINIMAL_MATCH_SCORE:
        return None
    if len(values) > 1 and values[0][1] == values[1][1]:
        logger.warning(
            f"Ambiguous suggestion for {requested!r}: {values[0][0]!r} and {values[1][0]!r} "
            f"score {values[0][1]}"
        )
    return values[0][0]


def unknown_name_message(kind: str, requested: str, known: Iterable[str]) -> str:
    suggestion = closest_name(requested, known)
    message = f"Unknown {kind}: {requested!r}"
    if suggestion:
        message += f" (did you mean {suggestion!r}?)"
    return message
