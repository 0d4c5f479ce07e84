"""Sequential sliding-window algorithms sharing one aggregator contract."""
from __future__ import annotations

from functools import partial
from typing import Callable, Dict, List, Sequence

from ..algebra import BinaryOp
from .base import EmptyWindow, WindowAggregator, run_fixed_window
from .naive import (naive_window, naive_windowed_recurrence, subtract_on_evict,
                    difference_of_prefix_sums, prefix_sums)
from .two_stacks import TwoStacksVariant, two_stacks, TwoStacksAggregator
from .dew import dew, DewAggregator, BasicDew, SentinelDew, DewMode
from .daba_lite import DabaLite
from .slick_deque import SlickDeque
from .timebased import TimeBasedWindow, time_based_window, NonMonotonicTimestamp
from .meta import meta_windowed_recurrence, nonassociative_window_product


def daba_lite(op) -> DabaLite:
    return DabaLite(op)


def slick_deque(op) -> SlickDeque:
    return SlickDeque(op)


def daba_lite_window(op, data: Sequence, n: int) -> List:
    return run_fixed_window(DabaLite(op), data, n)


def slick_deque_window(op, data: Sequence, n: int) -> List:
    return run_fixed_window(SlickDeque(op), data, n)


def two_stacks_stream_window(op, data: Sequence, n: int) -> List:
    return run_fixed_window(TwoStacksAggregator(op), data, n)


# batch algorithms that need only an associative op: name -> f(op, data, n)
ASSOCIATIVE_ALGORITHMS: Dict[str, Callable] = {
    "naive": naive_window,
    "twostacks:cie": partial(two_stacks, variant="cie"),
    "twostacks:ie": partial(two_stacks, variant="ie"),
    "twostacks:ei": partial(two_stacks, variant="ei"),
    "twostacks:v3": partial(two_stacks, variant="v3"),
    "twostacks:v4": partial(two_stacks, variant="v4"),
    "twostacks:stream": two_stacks_stream_window,
    "dew1": partial(dew, variant=1),
    "dew2": partial(dew, variant=2),
    "dew1:basic": partial(dew, variant=1, implementation="basic"),
    "dew2:basic": partial(dew, variant=2, implementation="basic"),
    "daba": daba_lite_window,
}


def _call(name, op, data, n):
    f = ASSOCIATIVE_ALGORITHMS[name]
    if type(op) is BinaryOp:
        # skip the wrapper's __call__ in the hot loop; instrumented ops are left alone
        op = op.apply
    if isinstance(f, partial):
        return f(op=op, data=data, n=n)
    return f(op, data, n)


def window_algorithm(name: str) -> Callable[[Callable, Sequence, int], List]:
    """Positional ``f(op, data, n)`` for a registered associative algorithm."""
    if name not in ASSOCIATIVE_ALGORITHMS:
        raise KeyError(f"unknown algorithm {name!r}")
    return lambda op, data, n: _call(name, op, data, n)


__all__ = [
    "EmptyWindow", "WindowAggregator", "run_fixed_window", "naive_window",
    "naive_windowed_recurrence", "subtract_on_evict", "difference_of_prefix_sums",
    "prefix_sums", "TwoStacksVariant", "two_stacks", "TwoStacksAggregator", "dew",
    "DewAggregator", "BasicDew", "SentinelDew", "DewMode", "DabaLite", "SlickDeque",
    "daba_lite", "slick_deque", "daba_lite_window", "slick_deque_window",
    "TimeBasedWindow", "time_based_window", "NonMonotonicTimestamp",
    "meta_windowed_recurrence", "nonassociative_window_product", "ASSOCIATIVE_ALGORITHMS", "window_algorithm",
]
