"""Vector sliding window *-products as powers in a semidirect product.

The window product over a whole array is the second component of
<1, a>^n in Z+ x| A, where <i,a> * <j,b> = <i+j, compose(a, shift(i, b))>.
Any exponentiation method gives the same answer; the choice only changes
the operation count, the parallel depth and the bracketing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence

from .algebra import FunctionCompositionRep, SemidirectElement, semidirect_op
from .exponentiation import (binary_exponentiate, exponentiator,
                             multi_exponentiate, parallel_binary_exponentiate,
                             repeated_square)


class _One:
    """Adjoined identity for the fixed-length scheme."""

    __slots__ = ()

    def __repr__(self):
        return "ONE"


ONE = _One()


@dataclass(frozen=True)
class VectorProductContext:
    compose: Callable[[Any, Any], Any]
    shift: Callable[[int, Any], Any]

    def semidirect(self):
        return semidirect_op(self.compose, self.shift)


@dataclass(frozen=True)
class VectorActionContext(VectorProductContext):
    lift: Callable[[Any], Any] = None
    apply: Callable[[Any, Any], Any] = None
    shiftx: Callable[[int, Any], Any] = None


def _default_exponentiate(op, x, n):
    return binary_exponentiate(op, x, n, False)


# -- schemes -------------------------------------------------------------------


class FixedLenScheme:
    """Length-N arrays; shift pads on the left with the identity.

    If ``identity`` is None a synthetic ``ONE`` is adjoined and compose
    treats it as a two-sided unit, so ``op`` is never called on it.
    """

    def __init__(self, op, identity=None):
        self.op = op
        self.identity = identity

    def compose(self, u, v):
        op = self.op
        if self.identity is not None:
            return [op(a, b) for a, b in zip(u, v)]
        out = []
        for a, b in zip(u, v):
            if a is ONE:
                out.append(b)
            elif b is ONE:
                out.append(a)
            else:
                out.append(op(a, b))
        return out

    def shift(self, i, u):
        pad = ONE if self.identity is None else self.identity
        m = len(u)
        i = min(i, m)
        return [pad] * i + list(u[:m - i])

    def context(self) -> VectorProductContext:
        return VectorProductContext(self.compose, self.shift)


class VarLenScheme:
    """Sequences of length <= N; no identity needed.

    compose aligns tails and shift truncates from the right, so L_i(u)
    keeps the first len(u) - i entries.
    """

    def __init__(self, op):
        self.op = op

    def compose(self, u, v):
        p, q = len(u), len(v)
        op = self.op
        if p >= q:
            d = p - q
            return list(u[:d]) + [op(u[d + t], v[t]) for t in range(q)]
        d = q - p
        return list(v[:d]) + [op(u[t], v[d + t]) for t in range(p)]

    def shift(self, i, u):
        return list(u[:max(len(u) - i, 0)])

    def context(self) -> VectorProductContext:
        return VectorProductContext(self.compose, self.shift)


def rep_action_context(rep: FunctionCompositionRep, x_pad, identity=None) -> VectorActionContext:
    """Elementwise vectorisation of a scalar representation.

    Lifted arrays use the fixed-length scheme; state arrays are shifted
    with ``x_pad`` (the initial value x_0) filling from the left.
    """
    scheme = FixedLenScheme(rep.compose, identity)

    def lift(a):
        return [rep.lift(v) for v in a]

    def apply(z, x):
        return [xv if zv is ONE else rep.apply(zv, xv) for zv, xv in zip(z, x)]

    def shiftx(i, x):
        m = len(x)
        i = min(i, m)
        return [x_pad] * i + list(x[:m - i])

    return VectorActionContext(scheme.compose, scheme.shift, lift, apply, shiftx)


# -- core algorithms ---------------------------------------------------------------


def window_compose(ctx: VectorProductContext, a, n: int, exponentiate=None, op_wrapper=None):
    """a * (L1 a * (L2 a * (... * L_{n-1} a))) via <1, a>^n.

    ``op_wrapper`` may wrap the semidirect operator, e.g. to count calls.
    """
    if n < 1:
        raise ValueError("window length must be >= 1")
    exponentiate = exponentiate or _default_exponentiate
    sop = ctx.semidirect()
    if op_wrapper is not None:
        sop = op_wrapper(sop)
    return exponentiate(sop, SemidirectElement(1, a), n)[1]


def window_power(ctx: VectorProductContext, a, n: int, exponentiate=None, op_wrapper=None) -> SemidirectElement:
    """The full semidirect power <1, a>^n (exponent bookkeeping included)."""
    exponentiate = exponentiate or _default_exponentiate
    sop = ctx.semidirect()
    if op_wrapper is not None:
        sop = op_wrapper(sop)
    return exponentiate(sop, SemidirectElement(1, a), n)


def window_apply(ctx: VectorActionContext, n: int, a, x, exponentiate=None, op_wrapper=None):
    """a . (L1 a . (... . (L_{n-1} a . L_{X,n} x))).

    ``compose`` may be nonassociative as long as the representation is
    semi-associative.
    """
    data = window_compose(ctx, ctx.lift(a), n, exponentiate, op_wrapper)
    return ctx.apply(data, ctx.shiftx(n, x))


def multi_window_compose(ctx: VectorProductContext, a, window_lengths: Sequence[int],
                         multi_exponentiate_fn=None, op_wrapper=None) -> List:
    """window_compose for several lengths from one shared set of powers."""
    sop = ctx.semidirect()
    if op_wrapper is not None:
        sop = op_wrapper(sop)
    mexp = multi_exponentiate_fn or multi_exponentiate
    powers = mexp(sop, SemidirectElement(1, a), list(window_lengths))
    return [p[1] for p in powers]


def prefix_scan(ctx: VectorProductContext, a, N: Optional[int] = None, op_wrapper=None):
    """Prefix products: a window at least as long as the data.

    Uses n = 2^ceil(log2 N) so the power is pure squaring.
    """
    N = len(a) if N is None else N
    if N <= 1:
        return list(a)
    j = (N - 1).bit_length()
    sop = ctx.semidirect()
    if op_wrapper is not None:
        sop = op_wrapper(sop)
    return repeated_square(sop, SemidirectElement(1, a), j)[1]


def joint_prefix_and_window(ctx: VectorProductContext, a, n: int, N: Optional[int] = None,
                            chain_method: str = "binary", k: Optional[int] = None,
                            op_wrapper=None, stats: Optional[dict] = None):
    """(window of length n, prefix products) sharing one power.

    z = <1,a>^n is computed by ``chain_method`` and then squared
    ceil(log2 N/n) times to reach a power m >= N. ``stats`` receives the
    semidirect call count, the prefix length m and, for the parallel
    method, the number of parallel steps.
    """
    N = len(a) if N is None else N
    if not 1 <= n <= max(N, 1):
        raise ValueError("need 1 <= n <= N")
    sop = ctx.semidirect()
    calls = [0]

    def counted(u, v):
        calls[0] += 1
        return sop(u, v)

    op = op_wrapper(counted) if op_wrapper is not None else counted
    x = SemidirectElement(1, a)
    depth = None
    if chain_method == "parallel":
        z, schedule = parallel_binary_exponentiate(op, x, n)
        depth = schedule.depth
    else:
        z = exponentiator(chain_method, k=k)(op, x, n)
    j = math.ceil(math.log2(N / n)) if N > n else 0
    p = repeated_square(op, z, j)
    if stats is not None:
        stats["calls"] = calls[0]
        stats["prefix_length"] = p[0]
        stats["squarings"] = j
        if depth is not None:
            stats["parallel_steps"] = depth + j
    return z[1], p[1]


# -- named wrappers ------------------------------------------------------------------


def _linrec_compose(p, q):
    return (p[0] * q[0], p[1] + p[0] * q[1])


def _linrec_context(x_pad=0.0) -> VectorActionContext:
    rep = FunctionCompositionRep(lambda t: t, _linrec_compose, lambda z, x: z[1] + z[0] * x, "linrec")
    return rep_action_context(rep, x_pad, identity=(1, 0))


def window_sum_with_scale_changes(u: Sequence, v: Sequence, n: int, exponentiate=None) -> List:
    """y_i = v_i + u_i (v_{i-1} + u_{i-1}(... + u_{i-n+2} v_{i-n+1})).

    The window length passed to window_apply is n - 1 since the oldest
    term v_{i-n+1} acts as the starting value.
    """
    if n == 1:
        return list(v)
    ctx = _linrec_context(0)
    return window_apply(ctx, n - 1, list(zip(u, v)), list(v), exponentiate)


def window_linear_recurrence(u: Sequence, v: Sequence, x: Sequence, n: int, exponentiate=None,
                             x0=0) -> List:
    """n steps of x -> v_i + u_i x starting from x_{i-n} (x0 before the data)."""
    ctx = _linrec_context(x0)
    return window_apply(ctx, n, list(zip(u, v)), list(x), exponentiate)


def window_continued_fraction(a: Sequence, n: int, norm: str = "one_norm", exponentiate=None) -> List:
    """y_i = a_i + 1/(a_{i-1} + 1/(... + 1/a_{i-n+1}))."""
    from .gallery import rep_continued_fraction
    rep = rep_continued_fraction(norm)
    ctx = rep_action_context(rep, math.inf)
    return window_apply(ctx, n, list(a), [math.inf] * len(a), exponentiate)


__all__ = [
    "ONE", "VectorProductContext", "VectorActionContext", "FixedLenScheme", "VarLenScheme",
    "rep_action_context", "window_compose", "window_power", "window_apply",
    "multi_window_compose", "prefix_scan", "joint_prefix_and_window",
    "window_sum_with_scale_changes", "window_linear_recurrence", "window_continued_fraction",
]
