"""Operation counting: an instrumented operator plus the closed-form counts.

The closed forms below are checked against the instrumented algorithms
in the test suite. Boolean factors such as ``(r > 0)`` are written out as
explicit 0/1 integers via ``_b``.
"""
from __future__ import annotations

import itertools
from typing import List, Sequence


TWO_STACKS_VARIANTS = ("cie", "ie", "ei", "v3", "v4")
DEW_VARIANTS = (1, 2)


class LengthMismatch(ValueError):
    pass


class InstrumentedOp:
    """Wrap a binary operation and count its invocations.

    Algorithms call ``mark()`` after emitting each output so the per-output
    increments can be recovered with ``increments()``.
    """

    def __init__(self, inner):
        self.inner = inner
        self.total = 0
        self.marks: List[int] = []
        self.claims_associative = getattr(inner, "claims_associative", True)
        self.name = getattr(inner, "name", "op")

    def __call__(self, x, y):
        self.total += 1
        return self.inner(x, y)

    def mark(self):
        self.marks.append(self.total)

    def increments(self) -> List[int]:
        out, prev = [], 0
        for m in self.marks:
            out.append(m - prev)
            prev = m
        return out

    def reset(self):
        self.total = 0
        self.marks = []

    def __repr__(self):
        return f"InstrumentedOp({self.name}, total={self.total})"


def instrument(op) -> InstrumentedOp:
    return InstrumentedOp(op)


def mark(op) -> None:
    """Call ``op.mark()`` if the operator is instrumented; no-op otherwise."""
    m = getattr(op, "mark", None)
    if m is not None:
        m()


def cumulatively_dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff every prefix sum of ``a`` is <= the matching prefix sum of ``b``."""
    if len(a) != len(b):
        raise LengthMismatch(f"lengths differ: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(itertools.accumulate(a), itertools.accumulate(b)))


def _b(cond: bool) -> int:
    return 1 if cond else 0


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


def count_two_stacks(variant: str, n: int, N: int) -> int:
    """Closed-form op count of a Two Stacks variant over N outputs, window n."""
    v = variant.lower()
    if v not in TWO_STACKS_VARIANTS:
        raise ValueError(f"unknown Two Stacks variant {variant!r}")
    if n < 1 or N < 0:
        raise ValueError("n must be >= 1 and N >= 0")
    if N == 0:
        return 0
    if n == 1:
        return N // 2 if v == "ie" else 0
    if N <= n:
        return N - 1
    if v in ("cie", "ie"):
        k, r = divmod(N, n + 1)
        per = 3 * n - 3 if v == "cie" else 3 * n - 2
        return k * per - n + 1 + _b(r > 0) * (2 * r - 1 - _b(r == n))
    if v == "ei":
        k, r = divmod(N, n)
        return k * (3 * n - 4) - 2 * n + 3 + _b(r > 0) * (n + 2 * r - 3)
    if v == "v3":
        k, r = divmod(N, n)
        return k * (3 * n - 4) - 2 * n + 3 + _b(r > 0) * (n + 2 * r - 4 + _b(r == 1))
    k, r = divmod(N - 1, n - 1)
    return k * (3 * n - 5) - 2 * n + 4 + _b(r > 0) * (n + 2 * r - 3)


def count_dew(variant: int, n: int, N: int) -> int:
    """Closed-form op count of DEW variant 1 or 2 over N outputs, window n."""
    if variant not in DEW_VARIANTS:
        raise ValueError(f"unknown DEW variant {variant!r}")
    if n < 1 or N < 0:
        raise ValueError("n must be >= 1 and N >= 0")
    if N == 0 or n == 1 or N == 1:
        return 0
    if n == 2 or N <= _ceil_half(n):
        return N - 1
    if N <= n:
        if variant == 1:
            return 3 * N - n - 3
        return 3 * N - n - 2 - _b(N == n)
    k, r = divmod(N, n)
    base = k * (3 * n - 4) - n + 1
    if r == 0:
        return base
    if variant == 1:
        return base + 3 * r - 2 - _b(r > n // 2) - _b(r > _ceil_half(n))
    m = n - 1
    return base + 3 * r - 1 - _b(r > m // 2) - _b(r > _ceil_half(m))


def two_stacks_increments(variant: str, n: int, N: int) -> List[int]:
    """Per-output increment sequence of a Two Stacks variant.

    Startup outputs cost 0,1,1,...; afterwards each batch repeats a fixed
    pattern whose start index depends on the variant.
    """
    v = variant.lower()
    if v not in TWO_STACKS_VARIANTS:
        raise ValueError(f"unknown Two Stacks variant {variant!r}")
    if N <= 0:
        return []
    if n == 1:
        if v == "ie":
            return [(i % 2 == 0) * 1 for i in range(1, N + 1)]
        return [0] * N
    out = [0] + [1] * (min(n, N) - 1)
    if v in ("cie", "ie"):
        first = [n if v == "ie" else n - 1]
        batch = first + [1] + [2] * (n - 2) + [1]
    elif v == "v3":
        batch = [n - 1, 1] + [2] * (n - 2)
    elif v == "ei":
        batch = [n - 1] + [2] * (n - 2) + [1]
    else:
        batch = [n - 1] + [2] * (n - 2)
    while len(out) < N:
        out.extend(batch)
    return out[:N]


def dew_increments(variant: int, n: int, N: int) -> List[int]:
    """Per-output increment sequence for DEW, derived from the closed form."""
    return [count_dew(variant, n, i) - count_dew(variant, n, i - 1) for i in range(1, N + 1)]


__all__ = [
    "InstrumentedOp", "instrument", "mark", "cumulatively_dominates", "LengthMismatch",
    "count_two_stacks", "count_dew", "two_stacks_increments", "dew_increments",
    "TWO_STACKS_VARIANTS", "DEW_VARIANTS",
]
