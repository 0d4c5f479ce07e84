"""The streaming aggregator contract shared by the sequential algorithms."""
from __future__ import annotations

import abc
from typing import Iterable, List

from ..opcount import mark


class EmptyWindow(IndexError):
    """evict() or query() on an empty window."""


class WindowAggregator(abc.ABC):
    """insert / evict / query over a window of values, newest on the left.

    ``query()`` returns a_i * (a_{i-1} * (... * a_j)) over the items
    currently held.
    """

    op = None

    @abc.abstractmethod
    def insert(self, value) -> None: ...

    @abc.abstractmethod
    def evict(self) -> None: ...

    @abc.abstractmethod
    def query(self): ...

    @abc.abstractmethod
    def __len__(self) -> int: ...

    def combined_insert_evict(self, value):
        """Fixed-length steady-state step: evict the oldest, insert, query."""
        self.evict()
        self.insert(value)
        return self.query()


def run_fixed_window(agg: WindowAggregator, data: Iterable, n: int) -> List:
    """Drive an aggregator over ``data`` with window length ``n``.

    Each step evicts if the window is full, inserts, then queries; the
    aggregator's op is marked after every output.
    """
    if n < 1:
        raise ValueError("window length must be >= 1")
    out = []
    for v in data:
        if len(agg) >= n:
            agg.evict()
        agg.insert(v)
        out.append(agg.query())
        mark(agg.op)
    return out
