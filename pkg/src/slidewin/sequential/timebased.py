"""Time-based windows on top of any variable-length aggregator."""
from __future__ import annotations

import math
from collections import deque
from typing import Iterable, List, Tuple

from .base import WindowAggregator


class NonMonotonicTimestamp(ValueError):
    pass


class TimeBasedWindow:
    """Keep the items with timestamp >= t_latest - horizon.

    Each arrival is inserted, then items older than the horizon are
    evicted, then the aggregate is returned.
    """

    def __init__(self, agg: WindowAggregator, horizon: float = math.inf):
        if horizon < 0:
            raise ValueError("horizon must be nonnegative")
        self.agg = agg
        self.horizon = horizon
        self._stamps = deque()

    def push(self, t, value):
        if self._stamps and t < self._stamps[-1]:
            raise NonMonotonicTimestamp(f"timestamp {t!r} is earlier than {self._stamps[-1]!r}")
        self.agg.insert(value)
        self._stamps.append(t)
        cutoff = t - self.horizon
        while self._stamps and self._stamps[0] < cutoff:
            self._stamps.popleft()
            self.agg.evict()
        return self.agg.query()

    def __len__(self):
        return len(self._stamps)


def time_based_window(agg: WindowAggregator, horizon: float, items: Iterable[Tuple]) -> List:
    """Aggregate after each (timestamp, value) arrival."""
    w = TimeBasedWindow(agg, horizon)
    return [w.push(t, v) for t, v in items]
