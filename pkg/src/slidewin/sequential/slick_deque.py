"""Slick Deque for selection operators with a transitive relation.

A newly inserted x removes every back entry v with x * v == x, since such
a v can never again be the window answer while x is in the window. The
front of the deque is the window aggregate.
"""
from __future__ import annotations

from collections import deque

from .base import WindowAggregator, EmptyWindow


class SlickDeque(WindowAggregator):
    """Requires ``op`` to be a selection operator whose relation is transitive.

    ``comparisons`` counts the equality tests made by the removal loop;
    op calls are counted by the operator itself when instrumented.
    """

    def __init__(self, op):
        self.op = op
        self.arr = deque()  # (value, item index)
        self.i = 0  # last inserted index
        self.j = 0  # index one before the window start
        self.comparisons = 0

    def __len__(self):
        return self.i - self.j

    def insert(self, x):
        arr = self.arr
        while arr:
            self.comparisons += 1
            if self.op(x, arr[-1][0]) == x:
                arr.pop()
            else:
                break
        self.i += 1
        arr.append((x, self.i))

    def evict(self):
        if self.i == self.j:
            raise EmptyWindow("evict() on an empty window")
        self.j += 1
        if self.arr and self.arr[0][1] == self.j:
            self.arr.popleft()

    def query(self):
        if self.i == self.j:
            raise EmptyWindow("query() on an empty window")
        return self.arr[0][0]

    def state(self):
        return list(self.arr)
