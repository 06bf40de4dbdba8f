"""In-memory cache for per-(mode, lambda) projection ingredients."""
import logging
import threading
from collections import OrderedDict
from typing import Dict, Hashable, Iterable, Optional

from src.config import config

logger = logging.getLogger(__name__)


class InMemoryProjectionCache:
    """Bounded, lock-protected store of values that are pure functions of their keys.

    Insertion order only affects which entries are evicted, never the values
    returned, so concurrent sweeps stay deterministic.
    """

    def __init__(self, max_entries: Optional[int] = None):
        self.entries: "OrderedDict[Hashable, complex]" = OrderedDict()
        self.max_entries = max_entries if max_entries is not None else config.cache_size
        self._lock = threading.Lock()

    def get(self, key: Hashable) -> Optional[complex]:
        """Get a cached value by key."""
        with self._lock:
            return self.entries.get(key)

    def set(self, key: Hashable, value: complex) -> None:
        """Store a value, evicting the oldest entries beyond capacity."""
        with self._lock:
            if key not in self.entries:
                self.entries[key] = value
                while len(self.entries) > self.max_entries:
                    self.entries.popitem(last=False)

    def delete(self, key: Hashable) -> None:
        """Delete a cached value."""
        with self._lock:
            self.entries.pop(key, None)

    def exists(self, key: Hashable) -> bool:
        """Check if a key is cached."""
        return self.get(key) is not None

    def get_many(self, keys: Iterable[Hashable]) -> Dict[Hashable, complex]:
        """Cached values for the keys that are present."""
        with self._lock:
            return {key: self.entries[key] for key in keys if key in self.entries}

    def set_many(self, values: Dict[Hashable, complex]) -> None:
        for key, value in values.items():
            self.set(key, value)

    def clear(self) -> None:
        with self._lock:
            self.entries.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self.entries)


# Global cache instance
projection_cache = InMemoryProjectionCache()
