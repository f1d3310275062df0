"""
Memoization for the brute-force searches.

Pullbacks, colimits and span classes are recomputed many times while a
construction such as Par or F runs. Each finite category owns a SearchCache
keyed by the query, so repeated searches return the first (canonical) answer.
"""
import logging
from collections import OrderedDict
from typing import Any, Hashable

logger = logging.getLogger(__name__)

MISSING = object()


class SearchCache:
    """Size-bounded memo table with oldest-first eviction.

    Values may legitimately be None (an absent limit), so lookups go
    through ``lookup`` which distinguishes a miss from a cached None.
    """

    def __init__(self, maxsize: int = 200_000):
        """Initialize a new search cache."""
        self.maxsize = maxsize
        self.entries: "OrderedDict[Hashable, Any]" = OrderedDict()
        self.hits = 0
        self.misses = 0

    def lookup(self, key: Hashable) -> Any:
        """Return the cached value or the module sentinel ``MISSING``."""
        value = self.entries.get(key, MISSING)
        if value is MISSING:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def set(self, key: Hashable, value: Any) -> None:
        """Store a value, evicting the oldest entry when full."""
        if len(self.entries) >= self.maxsize and key not in self.entries:
            oldest_key, _ = self.entries.popitem(last=False)
            logger.debug(f"Search cache evicting oldest entry: {oldest_key!r}")
        self.entries[key] = value

    def clear(self) -> None:
        """Clear all cache entries."""
        logger.debug(f"Clearing search cache with {len(self.entries)} entries")
        self.entries.clear()

    def __len__(self) -> int:
        return len(self.entries)


