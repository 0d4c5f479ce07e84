"""Sliding window aggregation, windowed recurrences and semigroup exponentiation."""
from .algebra import (UNDEF, BinaryOp, FunctionCompositionRep, SemidirectElement, SetAction,
                      is_undef, semidirect_op)
from .sequential import (ASSOCIATIVE_ALGORITHMS, DabaLite, SlickDeque, TimeBasedWindow, dew,
                         meta_windowed_recurrence, naive_window, naive_windowed_recurrence,
                         nonassociative_window_product, two_stacks, window_algorithm)
from .exponentiation import (binary_exponentiate, brauer_exponentiate, exponentiator,
                             multi_exponentiate, parallel_binary_exponentiate, thurber_exponentiate)
from .vector import (FixedLenScheme, VarLenScheme, joint_prefix_and_window, multi_window_compose,
                     prefix_scan, window_apply, window_compose)
from .opcount import count_dew, count_two_stacks, instrument

__version__ = "0.1.0"


def __getattr__(name):
    # sklearn is only loaded when the estimator is asked for
    if name == "SlidingWindowTransformer":
        from .estimators import SlidingWindowTransformer
        return SlidingWindowTransformer
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "UNDEF", "BinaryOp", "FunctionCompositionRep", "SemidirectElement", "SetAction", "is_undef",
    "semidirect_op", "ASSOCIATIVE_ALGORITHMS", "DabaLite", "SlickDeque", "TimeBasedWindow", "dew",
    "meta_windowed_recurrence", "naive_window", "naive_windowed_recurrence",
    "nonassociative_window_product", "two_stacks", "window_algorithm", "binary_exponentiate",
    "brauer_exponentiate", "exponentiator", "multi_exponentiate", "parallel_binary_exponentiate",
    "thurber_exponentiate", "FixedLenScheme", "VarLenScheme", "joint_prefix_and_window",
    "multi_window_compose", "prefix_scan", "window_apply", "window_compose", "count_dew",
    "count_two_stacks", "instrument", "SlidingWindowTransformer",
]
