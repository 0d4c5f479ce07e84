"""Windowed recurrences via any sliding window *-product algorithm.

Lift each a_i, run the window algorithm on the lifted values as if the
composition were associative, then apply the window products to the
right initial values. Only semi-associativity of the representation is
needed for the result to be exact.
"""
from __future__ import annotations

from typing import Callable, List, Sequence

from ..algebra import FunctionCompositionRep, compose_tables, left_action_table
from .naive import _x_getter


def meta_windowed_recurrence(rep: FunctionCompositionRep, data: Sequence, xs, n: int,
                             window_algorithm: Callable[[Callable, Sequence, int], List]) -> List:
    """y_i = apply(Y_i, x_0) for i <= n and apply(Y_i, x_{i-n}) afterwards.

    ``window_algorithm(op, lifted, n)`` must compute sliding window
    *-products using nothing but ``op``. ``xs`` is x_0, x_1, ... or a
    constant.
    """
    get_x = _x_getter(xs)
    lifted = [rep.lift(a) for a in data]
    Y = window_algorithm(rep.compose, lifted, n)
    return [rep.apply(y, get_x(0) if i <= n else get_x(i - n)) for i, y in enumerate(Y, start=1)]


def nonassociative_window_product(op: Callable, carrier: Sequence, data: Sequence, n: int,
                                  window_algorithm: Callable[[Callable, Sequence, int], List]) -> List:
    """Sliding window *-products for a nonassociative ``op`` on a finite carrier.

    y_i = a_i * (a_{i-1} * (... * a_{i-n+1})) is the windowed recurrence of
    the left action x -> a * x over a_2, a_3, ... with window n - 1,
    started from x_j = a_{j+1}. Left actions compose as lookup tables,
    which is associative, so any window algorithm can be used.
    """
    if n < 1:
        raise ValueError("window length must be >= 1")
    data = list(data)
    if n == 1 or len(data) <= 1:
        return data
    c = tuple(carrier)
    pos = {x: i for i, x in enumerate(c)}
    rep = FunctionCompositionRep(lambda a: left_action_table(op, a, c),
                                 lambda f, g: compose_tables(f, g, c, pos),
                                 lambda t, x: t[pos[x]], "lefttable")
    rest = meta_windowed_recurrence(rep, data[1:], data, n - 1, window_algorithm)
    return [data[0]] + rest
