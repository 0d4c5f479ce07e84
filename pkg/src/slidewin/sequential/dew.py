"""DEW on a circular array of n cells.

Two indexes move around the ring in opposite directions. ``q`` writes the
raw input, ``p`` writes a double-ended aggregate. Variant 1 starts with
p = q = 1 and Variant 2 with p = 1, q = n. Indexes are 1-based to match
the pseudo-code.

Two implementations are provided. ``basic`` follows the compact
pseudo-code and checks cell emptiness on every step. ``sentinel`` keeps a
sentinel index so that the common case is reached with one comparison;
emptiness during startup is decided from the step count, so unwritten
cells are never read.
"""
from __future__ import annotations

import enum
from typing import List, Sequence

from ..opcount import mark
from .base import WindowAggregator, EmptyWindow

_EMPTY = object()


class DewMode(enum.Enum):
    ONE = "one"
    TWO = "two"
    START = "start"
    REGULAR = "regular"


def _check_variant(variant):
    if variant not in (1, 2):
        raise ValueError(f"DEW variant must be 1 or 2, got {variant!r}")


class BasicDew:
    """Direct transcription of the basic circular pseudo-code."""

    def __init__(self, op, n: int, variant: int = 1):
        _check_variant(variant)
        if n < 1:
            raise ValueError("window length must be >= 1")
        self.op, self.n, self.variant = op, n, variant
        self.p = 1
        self.q = 1 if variant == 1 else n
        self.arr = [_EMPTY] * (n + 1)  # slot 0 unused

    def _wrap(self, x):
        return (x - 1) % self.n + 1

    def insert(self, x):
        op, arr, p, q = self.op, self.arr, self.p, self.q
        p_last, q_last = self._wrap(p - 1), self._wrap(q + 1)
        p_next, q_next = self._wrap(p + 1), self._wrap(q - 1)
        if p == q or (p == q_last and arr[p] is _EMPTY):
            dea = x
        elif p == q_last:
            dea = op(x, arr[p])
        elif arr[p] is _EMPTY:
            dea = op(x, arr[p_last])
        else:
            dea = op(x, op(arr[p_last], arr[p]))
        if q_next == p or arr[q_next] is _EMPTY:
            agg = dea
        else:
            agg = op(dea, arr[q_next])
        arr[q] = x
        if p != q:
            arr[p] = dea
        self.p, self.q = p_next, q_next
        return agg


class SentinelDew:
    """Circular DEW with sentinel bookkeeping.

    In REGULAR mode every step with ``p != sentinel`` is the common case
    ``dea = x * (arr[p-1] * arr[p])``, ``agg = dea * arr[q-1]``. Any other
    step runs the general rule once and then recomputes the sentinel as
    the first future position of ``p`` where the common case stops
    applying (wrap-around, or p and q within one cell of each other).
    """

    def __init__(self, op, n: int, variant: int = 1):
        _check_variant(variant)
        if n < 1:
            raise ValueError("window length must be >= 1")
        self.op, self.n, self.variant = op, n, variant
        self.p = 1
        self.q = 1 if variant == 1 else n
        self._q0 = self.q
        self.arr = [None] * (n + 2)
        self.steps = 0
        self.sentinel = 1
        self.mode = DewMode.ONE if n == 1 else DewMode.TWO if n == 2 else DewMode.START

    def _wrap(self, x):
        return (x - 1) % self.n + 1

    def _written(self, c) -> bool:
        # cells written by p (forward from 1) or by q (backward from q0)
        t, n = self.steps, self.n
        if t >= n:
            return True
        return (c - 1) % n < t or (self._q0 - c) % n < t

    def _all_written(self) -> bool:
        t, n = self.steps, self.n
        covered = 2 * t - 1 if self.variant == 1 else 2 * t
        return t >= n or covered >= n

    def insert(self, x):
        if self.p != self.sentinel:
            op, arr, p, q = self.op, self.arr, self.p, self.q
            dea = op(x, op(arr[p - 1], arr[p]))
            agg = op(dea, arr[q - 1])
            arr[p] = dea
            arr[q] = x
            self.p, self.q = p + 1, q - 1
            self.steps += 1
            return agg
        if self.mode is DewMode.ONE:
            self.steps += 1
            return x
        agg = self._general(x)
        self.steps += 1
        if self.mode is DewMode.START and self._all_written():
            self.mode = DewMode.REGULAR
        self.sentinel = self._next_sentinel() if self.mode is DewMode.REGULAR else self.p
        return agg

    def _general(self, x):
        """One step of the general rule with arithmetic emptiness checks."""
        op, arr = self.op, self.arr
        p, q = self._wrap(self.p), self.q
        p_last, q_last = self._wrap(p - 1), self._wrap(q + 1)
        p_next, q_next = self._wrap(p + 1), self._wrap(q - 1)
        full = self.mode is DewMode.REGULAR
        p_full = full or self._written(p)
        if p == q or (p == q_last and not p_full):
            dea = x
        elif p == q_last:
            dea = op(x, arr[p])
        elif not p_full:
            dea = op(x, arr[p_last])
        else:
            dea = op(x, op(arr[p_last], arr[p]))
        if q_next == p or not (full or self._written(q_next)):
            agg = dea
        else:
            agg = op(dea, arr[q_next])
        arr[q] = x
        if p != q:
            arr[p] = dea
        self.p, self.q = p_next, q_next
        return agg

    def _next_sentinel(self) -> int:
        p, q, n = self.p, self.q, self.n
        s = 0
        while True:
            pp, qq = p + s, q - s
            if pp < 2 or pp > n or qq < 2 or abs(qq - pp) <= 1:
                return pp
            s += 1


def dew(op, variant: int, data: Sequence, n: int, implementation: str = "sentinel") -> List:
    """Sliding window *-product via DEW. ``op`` must be associative."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"window length must be a positive integer, got {n!r}")
    if implementation == "sentinel":
        impl = SentinelDew(op, n, variant)
    elif implementation == "basic":
        impl = BasicDew(op, n, variant)
    else:
        raise ValueError(f"unknown DEW implementation {implementation!r}")
    out = []
    for x in data:
        out.append(impl.insert(x))
        mark(op)
    return out


class DewAggregator(WindowAggregator):
    """DEW behind the aggregator contract, for fixed window length ``n``.

    DEW's insert evicts by itself once n items are held, so ``evict`` only
    shrinks the logical count and is legal only in that auto-evicting
    sense: an explicit evict before a full window is unsupported.
    """

    def __init__(self, op, n: int, variant: int = 1, implementation: str = "sentinel"):
        self.op = op
        self.n = n
        cls = SentinelDew if implementation == "sentinel" else BasicDew
        self._impl = cls(op, n, variant)
        self._count = 0
        self._last = None

    def __len__(self):
        return self._count

    def insert(self, value):
        self._last = self._impl.insert(value)
        self._count = min(self._count + 1, self.n)

    def evict(self):
        if self._count == 0:
            raise EmptyWindow("evict() on an empty window")
        if self._count < self.n:
            raise NotImplementedError("DEW only supports eviction as part of a fixed-length step")
        self._count -= 1

    def query(self):
        if self._count == 0:
            raise EmptyWindow("query() on an empty window")
        return self._last

    def combined_insert_evict(self, value):
        self.insert(value)
        return self._last
