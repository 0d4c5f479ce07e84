"""DABA Lite: a de-amortized two-stack aggregator with constant worst-case cost.

Positions are absolute item numbers ``F <= L <= R <= A <= B <= E``:

* ``[F, L)``  fixed front items, ``agg[i]`` is the aggregate of ``[i, B)``
* ``[L, R)``  unfixed front items, ``agg[i]`` covers ``[i, R)``; the
  missing part ``[R, B)`` is ``agg_m``
* ``[R, A)``  raw items not yet built into suffix aggregates
* ``[A, B)``  built front items, ``agg[i]`` covers ``[i, B)``
* ``[B, E)``  back items, summarised by ``agg_b``

A flip turns the whole back into front and happens only once the front is
consistent (nothing unfixed, nothing raw). Each insert and each evict then
pays for one unit of the pending work, either fixing the oldest unfixed
aggregate or extending the build by one item, so no step ever spikes.

Internally ``_comb(older, newer)`` is ``op(newer, older)``, which keeps the
newest-on-the-left fold of the public contract.
"""
from __future__ import annotations

from typing import Dict

from .base import WindowAggregator, EmptyWindow


class DabaLite(WindowAggregator):
    def __init__(self, op):
        self.op = op
        self.vals: Dict[int, object] = {}
        self.agg: Dict[int, object] = {}
        self.F = self.L = self.R = self.A = self.B = self.E = 0
        self.agg_m = None
        self.agg_b = None

    def __len__(self):
        return self.E - self.F

    def _comb(self, older, newer):
        return self.op(newer, older)

    # -- public contract --------------------------------------------------

    def insert(self, value):
        self.vals[self.E] = value
        self.agg_b = value if self.agg_b is None else self._comb(self.agg_b, value)
        self.E += 1
        self._fixup()

    def evict(self):
        if self.F == self.E:
            raise EmptyWindow("evict() on an empty window")
        if self.F == self.B:
            # front is empty: the only item left to drop sits in the back
            self._flip()
        del self.vals[self.F]
        self.agg.pop(self.F, None)
        self.F += 1
        if self.L < self.F:
            self.L = min(self.F, self.R)
        if self.R < self.F:
            # evicted past the unfixed and raw regions; should not happen
            # once the fallback below has run, kept for safety
            self.L = self.R = self.F
            if self.A < self.F:
                self.A = self.F
        self._fixup()

    def query(self):
        if self.F == self.E:
            raise EmptyWindow("query() on an empty window")
        front = self._front_agg()
        if front is None:
            return self.agg_b
        if self.agg_b is None:
            return front
        return self._comb(front, self.agg_b)

    # -- internals --------------------------------------------------------

    def _front_agg(self):
        F = self.F
        if F == self.B:
            return None
        if F < self.L:
            return self.agg[F]
        if F < self.R:
            return self._comb(self.agg[F], self.agg_m)
        if F < self.A:
            self._finish_build()
        return self.agg[F]

    def _pending(self) -> bool:
        return self.L < self.R or self.A > self.R

    def _work(self):
        if self.A > self.R:
            self._build_one()
        elif self.L < self.R:
            self._fix_one()

    def _fix_one(self):
        L = self.L
        self.agg[L] = self._comb(self.agg[L], self.agg_m)
        self.L = L + 1

    def _build_one(self):
        self.A -= 1
        A = self.A
        if A + 1 == self.B:
            self.agg[A] = self.vals[A]
        else:
            self.agg[A] = self._comb(self.vals[A], self.agg[A + 1])

    def _finish_build(self):
        while self.A > self.R:
            self._build_one()

    def _flip(self):
        self._finish_build()
        while self.L < self.R:
            self._fix_one()
        self.L = self.F
        self.R = self.B
        self.A = self.E
        self.agg_m = self.agg_b
        self.B = self.E
        self.agg_b = None

    def _fixup(self):
        if self._pending():
            self._work()
        front = self.B - self.F
        back = self.E - self.B
        if not self._pending() and back > 0 and back >= front:
            self._flip()
