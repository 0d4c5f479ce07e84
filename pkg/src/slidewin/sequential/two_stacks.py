"""Two Stacks, batch form with a single live prefix accumulator.

Every variant splits the data into batches. At the first item of a batch
a suffix array is built over the previous items; the rest of the batch
extends a prefix ``P`` over the new items and combines it with the stored
suffix. The variants differ only in where batches start, how long they
are and how far back the suffix reaches.
"""
from __future__ import annotations

import enum
from typing import List, Sequence

from ..opcount import mark
from .base import WindowAggregator, EmptyWindow


class TwoStacksVariant(str, enum.Enum):
    CombinedInsertEvict = "cie"
    InsertEvict = "ie"
    EvictInsert = "ei"
    Variant3 = "v3"
    Variant4 = "v4"

    @classmethod
    def parse(cls, v) -> "TwoStacksVariant":
        if isinstance(v, cls):
            return v
        key = str(v).lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown Two Stacks variant {v!r}")


def _layout(variant: TwoStacksVariant, n: int):
    """(first batch start, batch length, suffix top offset from batch start)."""
    if variant in (TwoStacksVariant.CombinedInsertEvict, TwoStacksVariant.InsertEvict):
        return n + 1, n + 1, 0
    if variant is TwoStacksVariant.Variant3:
        return n + 1, n, 0
    if variant is TwoStacksVariant.EvictInsert:
        return n + 1, n, 1
    return n + 1, n - 1, 1


def two_stacks(op, variant, data: Sequence, n: int) -> List:
    """Sliding window *-product of ``data`` with window ``n``.

    ``op`` must be associative. Outputs are newest-on-the-left folds over
    the last ``min(i, n)`` items. The InsertEvict variant executes (and so
    counts) one extra, discarded product at the start of every batch.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"window length must be a positive integer, got {n!r}")
    variant = TwoStacksVariant.parse(variant)
    N = len(data)
    a = [None] + list(data)  # 1-based, like the pseudo-code
    out: List = []

    if n == 1:
        for i in range(1, N + 1):
            if variant is TwoStacksVariant.InsertEvict and i % 2 == 0:
                op(a[i], a[i - 1])
            out.append(a[i])
            mark(op)
        return out

    P = None
    for i in range(1, min(n, N) + 1):
        P = a[1] if i == 1 else op(a[i], P)
        out.append(P)
        mark(op)

    start, length, drop = _layout(variant, n)
    i0 = start
    while i0 <= N:
        top = i0 - drop
        S = {top: a[top]}
        for m in range(top - 1, i0 - n, -1):
            S[m] = op(S[m + 1], a[m])
        if variant is TwoStacksVariant.InsertEvict:
            op(a[i0], P)  # discarded
        P = None
        for i in range(i0, min(i0 + length, N + 1)):
            if i <= top:
                y = S[i - n + 1]
            else:
                P = a[i] if P is None else op(a[i], P)
                lo = i - n + 1
                y = op(P, S[lo]) if lo <= top else P
            out.append(y)
            mark(op)
        i0 += length
    return out


class TwoStacksAggregator(WindowAggregator):
    """Classic streaming Two Stacks for variable-length windows.

    The back stack only keeps a running aggregate of the newest items;
    the front stack holds suffix aggregates so that eviction is a pop.
    """

    def __init__(self, op):
        self.op = op
        self._front: List = []  # suffix aggregates, oldest item on top
        self._back: List = []
        self._back_agg = None

    def __len__(self):
        return len(self._front) + len(self._back)

    def insert(self, value):
        if self._back:
            self._back_agg = self.op(value, self._back_agg)
        else:
            self._back_agg = value
        self._back.append(value)

    def evict(self):
        if not len(self):
            raise EmptyWindow("evict() on an empty window")
        if not self._front:
            self._flip_to_front()
        self._front.pop()

    def _flip_to_front(self):
        # front must end with the aggregate that contains the oldest item
        aggs = []
        agg = None
        for v in reversed(self._back):
            agg = v if agg is None else self.op(agg, v)
            aggs.append(agg)
        self._front = aggs
        self._back = []
        self._back_agg = None

    def query(self):
        if not len(self):
            raise EmptyWindow("query() on an empty window")
        if not self._front:
            return self._back_agg
        if not self._back:
            return self._front[-1]
        return self.op(self._back_agg, self._front[-1])
