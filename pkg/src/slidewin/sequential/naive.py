"""Reference algorithms: the naive fold and the two inverse-based shortcuts.

``naive_window`` is the oracle every other algorithm is tested against.
Subtract-on-Evict and Difference-of-Prefix-Sums are kept because their
failure modes (drift, overflow, stuck missing values) are worth showing.
"""
from __future__ import annotations

from typing import Any, Callable, List, Sequence

from ..opcount import mark


def _check_n(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"window length must be a positive integer, got {n!r}")


def naive_window(op, data: Sequence, n: int) -> List:
    """y_i = a_i * (a_{i-1} * (... * a_{max(1, i-n+1)})).

    Terms with index < 1 are dropped. The fold is newest-on-the-left, so
    noncommutative operators give the expected order.
    """
    _check_n(n)
    out = []
    for i in range(len(data)):
        lo = max(0, i - n + 1)
        acc = data[lo]
        for m in range(lo + 1, i + 1):
            acc = op(data[m], acc)
        out.append(acc)
        mark(op)
    return out


def naive_windowed_recurrence(act: Callable[[Any, Any], Any], data: Sequence, xs, n: int) -> List:
    """y_i = a_i . (a_{i-1} . (... . (a_{i-n+1} . x_{i-n})))

    For i <= n the innermost value is x_0 and only a_1..a_i are applied.
    ``xs`` is a list x_0, x_1, ..., a callable j -> x_j, or a constant
    initial value (tuples count as a single structured value).
    """
    _check_n(n)
    get_x = _x_getter(xs)
    out = []
    for i in range(1, len(data) + 1):
        if i <= n:
            lo, x = 1, get_x(0)
        else:
            lo, x = i - n + 1, get_x(i - n)
        for m in range(lo, i + 1):
            x = act(data[m - 1], x)
        out.append(x)
    return out


def _x_getter(xs):
    # lists are x_0, x_1, ...; a tuple is a single (structured) state
    if isinstance(xs, list):
        return lambda j: xs[j]
    if callable(xs):
        return xs
    return lambda j: xs


def subtract_on_evict(add, subtract, data: Sequence, n: int, subtract_first: bool = True) -> List:
    """Moving sum by adding the new item and subtracting the evicted one.

    The update is evaluated as ``a_i + (y_{i-1} - a_{i-n})``, or as
    ``(a_i + y_{i-1}) - a_{i-n}`` when ``subtract_first`` is false. It
    agrees with the naive fold for exact group arithmetic and drifts or
    gets stuck on undefined values otherwise.
    """
    _check_n(n)
    out = []
    y = None
    for i, a in enumerate(data):
        if i == 0:
            y = a
        elif i < n:
            y = add(a, y)
        else:
            y = add(a, subtract(y, data[i - n])) if subtract_first else subtract(add(a, y), data[i - n])
        out.append(y)
        mark(add)
    return out


def difference_of_prefix_sums(add, subtract, data: Sequence, n: int) -> List:
    """y_i = z_i - z_{i-n} with the prefix sums z computed sequentially."""
    _check_n(n)
    prefix = prefix_sums(add, data)
    out = []
    for i in range(len(data)):
        out.append(prefix[i] if i < n else subtract(prefix[i], prefix[i - n]))
        mark(add)
    return out


def prefix_sums(add, data: Sequence) -> List:
    """z_i = a_i + z_{i-1}, newest on the left."""
    out = []
    for i, a in enumerate(data):
        out.append(a if i == 0 else add(a, out[-1]))
    return out
