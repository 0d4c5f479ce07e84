"""Concrete operators and representations of function composition.

Each entry in ``REGISTRY`` bundles an operator or representation with what
the sequential, vector and CLI layers need: a random sampler, an optional
``prepare`` step that turns raw input items into operator values (for
example pairing values with their indices), an initial state, a projection
for output, and flags describing which algorithms apply.
"""
from __future__ import annotations

import math
import random
import string
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import (UNDEF, BinaryOp, FunctionCompositionRep,
                      compose_tables, left_action_table, table_op)


# -- associative operators -------------------------------------------------------


def _absorbing(f, name):
    def op(x, y):
        if x is UNDEF or y is UNDEF:
            return UNDEF
        return f(x, y)
    return BinaryOp(op, True, name)


def op_sum() -> BinaryOp:
    """Addition; UNDEF is absorbing."""
    return _absorbing(lambda x, y: x + y, "sum")


def op_subtract() -> BinaryOp:
    """Inverse of op_sum for Subtract-on-Evict style algorithms."""
    return _absorbing(lambda x, y: x - y, "subtract")


def op_product() -> BinaryOp:
    return _absorbing(lambda x, y: x * y, "product")


def op_concat() -> BinaryOp:
    return BinaryOp(lambda x, y: x + y, True, "concat")


def op_union() -> BinaryOp:
    return BinaryOp(lambda x, y: x | y, True, "union")


def op_intersection() -> BinaryOp:
    return BinaryOp(lambda x, y: x & y, True, "intersection")


def op_coalesce() -> BinaryOp:
    """coalesce(a, b) = b if a is undefined else a; windows fill forward."""
    return BinaryOp(lambda x, y: y if x is UNDEF else x, True, "coalesce")


def op_max_total_order() -> BinaryOp:
    # x * y = y if x <= y else x
    return BinaryOp(lambda x, y: y if x <= y else x, True, "max")


def op_min_total_order() -> BinaryOp:
    return BinaryOp(lambda x, y: y if y <= x else x, True, "min")


def rep_argmax(mode: str = "earliest") -> BinaryOp:
    """Associative op on (value, index) pairs, or (value, frozenset) for ``set``.

    The right operand is the older item, so ``earliest`` keeps the right
    index on ties and ``latest`` keeps the left one.
    """
    if mode == "earliest":
        def op(p, q):
            return q if p[0] <= q[0] else p
    elif mode == "latest":
        def op(p, q):
            return p if p[0] >= q[0] else q
    elif mode == "set":
        def op(p, q):
            if p[0] == q[0]:
                return (p[0], p[1] | q[1])
            return q if p[0] < q[0] else p
    else:
        raise ValueError(f"unknown argmax mode {mode!r}")
    return BinaryOp(op, True, f"argmax.{mode}")


def rep_max_count() -> BinaryOp:
    """(max, multiplicity) pairs; lift a -> (a, 1)."""
    def op(p, q):
        if p[0] == q[0]:
            return (p[0], p[1] + q[1])
        return q if p[0] <= q[0] else p
    return BinaryOp(op, True, "maxcount")


# -- representations of function composition --------------------------------------


def _linrec_compose(p, q):
    return (p[0] * q[0], p[1] + p[0] * q[1])


def _linrec_apply(z, x):
    return z[1] + z[0] * x


def rep_linear_recurrence() -> FunctionCompositionRep:
    """x_i = a_i + m_i x_{i-1} with items (m, a); identity (1, 0)."""
    return FunctionCompositionRep(lambda t: tuple(t), BinaryOp(_linrec_compose, True, "linrec"),
                                  _linrec_apply, "linrec")


def _coalesce0(a):
    return 0 if a is UNDEF else a


def rep_sum_missing() -> FunctionCompositionRep:
    return FunctionCompositionRep(_coalesce0, BinaryOp(lambda x, y: x + y, True, "sum"),
                                  lambda z, x: z + x, "summissing")


def rep_sum_scale_missing() -> FunctionCompositionRep:
    """Items (m, a) with a possibly undefined."""
    return FunctionCompositionRep(lambda t: (t[0], _coalesce0(t[1])),
                                  BinaryOp(_linrec_compose, True, "linrec"),
                                  _linrec_apply, "sumscalemissing")


def rep_ewma_type1(c: float) -> FunctionCompositionRep:
    """x_i = (1-c) a_i + c x_{i-1}."""
    return FunctionCompositionRep(lambda a: (c, (1 - c) * a), BinaryOp(_linrec_compose, True, "linrec"),
                                  _linrec_apply, "ewma1")


def _ewma2_compose(p, q):
    return (p[0] * q[0], p[1] + p[0] * q[1], p[2] + p[0] * q[2])


def rep_ewma_type2(c: float) -> FunctionCompositionRep:
    """State (x, w); the average is x / w."""
    return FunctionCompositionRep(lambda a: (c, a, 1),
                                  BinaryOp(_ewma2_compose, True, "ewma2"),
                                  lambda z, s: (z[1] + z[0] * s[0], z[2] + z[0] * s[1]), "ewma2")


def rep_ewms(c: float) -> FunctionCompositionRep:
    """x_i = a_i + c x_{i-1}; a window product is (c^n, geometric convolution)."""
    return FunctionCompositionRep(lambda a: (c, a), BinaryOp(_linrec_compose, True, "linrec"),
                                  _linrec_apply, "ewms")


def rep_max_of_sum() -> FunctionCompositionRep:
    """State (z, x): running sum and its maximum."""
    def compose(p, q):
        return (p[0] + q[0], max(p[1] + q[0], q[1]))

    def apply(l, s):
        return (l[0] + s[0], max(l[1] + s[0], s[1]))

    return FunctionCompositionRep(lambda a: (a, a), BinaryOp(compose, True, "maxofsum"), apply, "maxofsum")


def _maxplus_compose(p, q):
    # f_p o f_q where f_(a,b)(z) = max(z + a, b)
    return (p[0] + q[0], max(p[0] + q[1], p[1]))


def rep_max_contiguous_subsequence() -> FunctionCompositionRep:
    """Windowed Kadane: state (z, x), lift a -> (a, 0, a, 0)."""
    def compose(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (a1 + a2, max(a1 + b2, b1), max(c1 + a2, c2), max(c1 + b2, d1, d2))

    def apply(l, s):
        a, b, c, d = l
        z, x = s
        return (max(z + a, b), max(z + c, d, x))

    return FunctionCompositionRep(lambda a: (a, 0, a, 0), BinaryOp(compose, True, "maxcontig"),
                                  apply, "maxcontig")


def rep_cusum() -> FunctionCompositionRep:
    """Items (z, omega); x_i = max(0, x_{i-1} + z_i - omega_i)."""
    return FunctionCompositionRep(lambda t: (t[0] - t[1], 0), BinaryOp(_maxplus_compose, True, "maxplus"),
                                  lambda l, x: max(x + l[0], l[1]), "cusum")


def _matmul(A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _scale(A, s):
    return tuple(tuple(v / s for v in row) for row in A)


def _frobenius(A):
    return math.sqrt(sum(v * v for row in A for v in row))


def _one_norm(A):
    (a, b), (c, d) = A
    return max(abs(a) + abs(c), abs(b) + abs(d))


def _mobius(A, x):
    """T_A(x) = (a11 x + a12) / (a21 x + a22); T_A(inf) = a11 / a21."""
    (a, b), (c, d) = A
    if math.isinf(x):
        num, den = a, c
    else:
        num, den = a * x + b, c * x + d
    if den == 0:
        return math.inf
    return num / den


CFRAC_NORMS = ("none", "frobenius", "one_norm", "left_norm")


def rep_continued_fraction(norm: str = "one_norm") -> FunctionCompositionRep:
    """y = a_i + 1/(a_{i-1} + 1/(...)) via products of [[a,1],[1,0]].

    ``frobenius`` and ``one_norm`` rescale the product by its own norm and
    stay associative. ``left_norm`` divides by the norm of the left factor
    only; it is not associative but is still a valid companion.
    """
    if norm == "none":
        compose = BinaryOp(_matmul, True, "cfrac")
    elif norm == "frobenius":
        compose = BinaryOp(lambda A, B: _scale(_matmul(A, B), _frobenius(_matmul(A, B))), True, "cfrac.frob")
    elif norm == "one_norm":
        compose = BinaryOp(lambda A, B: _scale(_matmul(A, B), _one_norm(_matmul(A, B))), True, "cfrac.one")
    elif norm == "left_norm":
        compose = BinaryOp(lambda A, B: _scale(_matmul(A, B), _one_norm(A)), False, "cfrac.left")
    else:
        raise ValueError(f"unknown norm {norm!r}")
    return FunctionCompositionRep(lambda a: ((a, 1), (1, 0)), compose, _mobius, f"cfrac.{norm}")


def cfrac_action(a, x):
    """a + 1/x with 1/inf = 0 and 1/0 = inf."""
    if math.isinf(x):
        return float(a)
    if x == 0:
        return math.inf
    return a + 1 / x


def rep_segmented_scan(op) -> FunctionCompositionRep:
    """Items (a, c): x_i = a_i if c_i else a_i * x_{i-1}."""
    def compose(p, q):
        a1, c1, z1 = p
        a2, c2, z2 = q
        return (op(a1, a2), c1 and c2, op(a1, z2) if c1 else z1)

    def apply(l, x):
        a, c, z = l
        return op(a, x) if c else z

    return FunctionCompositionRep(lambda t: (t[0], not t[1], t[0]), BinaryOp(compose, True, "segscan"),
                                  apply, "segscan")


def rep_run_statistics() -> FunctionCompositionRep:
    """Length of the current run of positive values."""
    def compose(p, q):
        r1, c1, z1 = p
        r2, c2, z2 = q
        return (r1 + r2, c1 and c2, r1 + z2 if c1 else z1)

    def apply(l, x):
        r, c, z = l
        return x + r if c else z

    return FunctionCompositionRep(lambda a: (1, a > 0, 0), BinaryOp(compose, True, "runstats"),
                                  apply, "runstats")


def rep_left_action_table(op, carrier: Sequence) -> FunctionCompositionRep:
    """Left action x -> op(a, x) on a finite carrier, composed as lookup tables.

    Table composition is associative even when ``op`` is not, so this
    turns any finite magma into a windowed recurrence.
    """
    c = tuple(carrier)
    pos = {x: i for i, x in enumerate(c)}
    return FunctionCompositionRep(lambda a: left_action_table(op, a, c),
                                  BinaryOp(lambda f, g: compose_tables(f, g, c, pos), True, "tables"),
                                  lambda t, x: t[pos[x]], "lefttable")


NONASSOC_CARRIER = ("a", "b", "c")

NONASSOC_TABLES = {
    "nonassoc1": (("a", "b", "a"), ("a", "b", "b"), ("c", "c", "c")),
    "nonassoc2": (("a", "b", "a"), ("b", "b", "b"), ("c", "c", "c")),
    "nonassoc3": (("a", "b", "a"), ("b", "b", "c"), ("a", "c", "c")),
    "nonassoc4": (("b", "c", "a"), ("c", "b", "a"), ("a", "c", "c")),
}


def nonassoc_op(name: str) -> BinaryOp:
    return table_op(NONASSOC_CARRIER, NONASSOC_TABLES[name])


# -- registry -----------------------------------------------------------------------


def _int(rng):
    return rng.randint(-9, 9)


def _float(rng):
    return rng.uniform(-10.0, 10.0)


def _maybe_na(f, p=0.15):
    def g(rng):
        return UNDEF if rng.random() < p else f(rng)
    return g


def _word(rng):
    return "".join(rng.choice(string.ascii_lowercase[:4]) for _ in range(rng.randint(0, 2)))


def _subset(rng):
    return frozenset(x for x in range(6) if rng.random() < 0.6)


@dataclass(frozen=True)
class GalleryEntry:
    """A registry record.

    ``kind`` is "op" for an associative operator used directly and "rep"
    for a representation driven through lift/compose/apply. ``action``
    is the direct set action a . x for reps (the naive oracle).
    """

    name: str
    kind: str
    op: Optional[BinaryOp] = None
    rep: Optional[FunctionCompositionRep] = None
    action: Optional[Callable] = None
    sampler: Callable[[random.Random], Any] = _int
    prepare: Optional[Callable[[Sequence], List]] = None
    x0: Any = 0
    project: Optional[Callable] = None
    exact: bool = True
    tol: float = 1e-9
    identity: Any = None
    selective: bool = False
    inverse: Optional[BinaryOp] = None
    columns: int = 1
    column_types: Tuple[str, ...] = ("num",)
    associative: bool = True

    def prepared(self, items: Sequence) -> List:
        return list(self.prepare(items)) if self.prepare else list(items)

    def output(self, y):
        return self.project(y) if self.project else y

    @property
    def compose(self) -> BinaryOp:
        return self.op if self.kind == "op" else self.rep.compose


def _with_index(items):
    return [(v, i) for i, v in enumerate(items, start=1)]


def _with_index_set(items):
    return [(v, frozenset([i])) for i, v in enumerate(items, start=1)]


def _count_one(items):
    return [(v, 1) for v in items]


def _pair(f, g):
    return lambda rng: (f(rng), g(rng))


def _small_mult(rng):
    return rng.randint(-2, 2)


def _ratio(s):
    return s[0] / s[1] if s[1] else math.nan


def _build() -> Dict[str, GalleryEntry]:
    R: Dict[str, GalleryEntry] = {}

    def add(e: GalleryEntry):
        R[e.name] = e

    add(GalleryEntry("sum", "op", op_sum(), identity=0, inverse=op_subtract()))
    add(GalleryEntry("sum_float", "op", op_sum(), sampler=_float, exact=False, identity=0.0,
                     inverse=op_subtract()))
    add(GalleryEntry("sum_na", "op", op_sum(), sampler=_maybe_na(_int), identity=0))
    add(GalleryEntry("product", "op", op_product(), sampler=lambda rng: rng.randint(-3, 3), identity=1))
    add(GalleryEntry("product_float", "op", op_product(), sampler=lambda rng: rng.uniform(0.5, 1.5),
                     exact=False, identity=1.0))
    add(GalleryEntry("concat", "op", op_concat(), sampler=_word, identity="", column_types=("str",)))
    add(GalleryEntry("union", "op", op_union(), sampler=_subset, identity=frozenset(), column_types=("set",)))
    add(GalleryEntry("intersection", "op", op_intersection(), sampler=_subset, column_types=("set",)))
    add(GalleryEntry("coalesce", "op", op_coalesce(), sampler=_maybe_na(_int, 0.5), identity=UNDEF,
                     selective=True))
    add(GalleryEntry("max", "op", op_max_total_order(), selective=True))
    add(GalleryEntry("min", "op", op_min_total_order(), selective=True))
    add(GalleryEntry("max_float", "op", op_max_total_order(), sampler=_float, selective=True))
    add(GalleryEntry("argmax.earliest", "op", rep_argmax("earliest"), prepare=_with_index, selective=True))
    add(GalleryEntry("argmax.latest", "op", rep_argmax("latest"), prepare=_with_index, selective=True))
    add(GalleryEntry("argmax.set", "op", rep_argmax("set"), prepare=_with_index_set))
    add(GalleryEntry("maxcount", "op", rep_max_count(), prepare=_count_one))
    add(GalleryEntry("linrec_op", "op", BinaryOp(_linrec_compose, True, "linrec"),
                     sampler=_pair(_small_mult, _int), identity=(1, 0), columns=2,
                     column_types=("num", "num")))

    add(GalleryEntry("linrec", "rep", rep=rep_linear_recurrence(),
                     action=lambda t, x: t[1] + t[0] * x, sampler=_pair(_small_mult, _int), x0=0,
                     identity=(1, 0), columns=2, column_types=("num", "num")))
    add(GalleryEntry("summissing", "rep", rep=rep_sum_missing(),
                     action=lambda a, x: x if a is UNDEF else a + x, sampler=_maybe_na(_int), x0=0,
                     identity=0))
    add(GalleryEntry("sumscalemissing", "rep", rep=rep_sum_scale_missing(),
                     action=lambda t, x: t[0] * x if t[1] is UNDEF else t[1] + t[0] * x,
                     sampler=_pair(_small_mult, _maybe_na(_int)), x0=0, identity=(1, 0), columns=2,
                     column_types=("num", "num")))
    add(GalleryEntry("ewma1", "rep", rep=rep_ewma_type1(0.5),
                     action=lambda a, x: (1 - 0.5) * a + 0.5 * x, sampler=_float, x0=0.0,
                     exact=False, identity=(1.0, 0.0)))
    add(GalleryEntry("ewma2", "rep", rep=rep_ewma_type2(0.5),
                     action=lambda a, s: (a + 0.5 * s[0], 1 + 0.5 * s[1]), sampler=_float,
                     x0=(0.0, 0.0), project=_ratio, exact=False, identity=(1.0, 0.0, 0.0)))
    add(GalleryEntry("ewms", "rep", rep=rep_ewms(0.5), action=lambda a, x: a + 0.5 * x,
                     sampler=_float, x0=0.0, exact=False, identity=(1.0, 0.0)))
    add(GalleryEntry("maxofsum", "rep", rep=rep_max_of_sum(),
                     action=lambda a, s: (a + s[0], max(a + s[0], s[1])), x0=(0, -math.inf),
                     project=lambda s: s[1], identity=(0, -math.inf)))
    add(GalleryEntry("maxcontig", "rep", rep=rep_max_contiguous_subsequence(),
                     action=lambda a, s: (max(s[0] + a, 0), max(max(s[0] + a, 0), s[1])), x0=(0, 0),
                     project=lambda s: s[1], identity=(0, -math.inf, -math.inf, -math.inf)))
    add(GalleryEntry("cusum", "rep", rep=rep_cusum(), action=lambda t, x: max(0, x + t[0] - t[1]),
                     sampler=_pair(_int, lambda rng: rng.randint(0, 3)), x0=0, identity=(0, -math.inf),
                     columns=2, column_types=("num", "num")))
    for norm in CFRAC_NORMS:
        add(GalleryEntry(f"cfrac.{norm}", "rep", rep=rep_continued_fraction(norm), action=cfrac_action,
                         sampler=lambda rng: rng.uniform(0.5, 3.0), x0=math.inf, exact=False, tol=1e-7,
                         identity=((1, 0), (0, 1)) if norm == "none" else None,
                         associative=(norm != "left_norm")))
    add(GalleryEntry("segscan", "rep", rep=rep_segmented_scan(lambda x, y: x + y),
                     action=lambda t, x: t[0] if t[1] else t[0] + x,
                     sampler=_pair(_int, lambda rng: rng.random() < 0.25), x0=0, identity=(0, True, 0),
                     columns=2, column_types=("num", "bool")))
    add(GalleryEntry("runstats", "rep", rep=rep_run_statistics(),
                     action=lambda a, x: x + 1 if a > 0 else 0, x0=0, identity=(0, True, 0)))
    for name in NONASSOC_TABLES:
        op = nonassoc_op(name)
        add(GalleryEntry(name, "rep", rep=rep_left_action_table(op, NONASSOC_CARRIER), action=op,
                         sampler=lambda rng: rng.choice(NONASSOC_CARRIER), x0="a",
                         identity=NONASSOC_CARRIER, column_types=("str",)))
    return R


REGISTRY: Dict[str, GalleryEntry] = _build()


def get(name: str) -> GalleryEntry:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown operator {name!r}; known: {', '.join(sorted(REGISTRY))}") from None


def sample(entry: GalleryEntry, rng: random.Random, N: int) -> List:
    """N raw input items for ``entry``."""
    return [entry.sampler(rng) for _ in range(N)]


__all__ = [
    "op_sum", "op_subtract", "op_product", "op_concat", "op_union", "op_intersection",
    "op_coalesce", "op_max_total_order", "op_min_total_order", "rep_argmax", "rep_max_count",
    "rep_linear_recurrence", "rep_sum_missing", "rep_sum_scale_missing", "rep_ewma_type1",
    "rep_ewma_type2", "rep_ewms", "rep_max_of_sum", "rep_max_contiguous_subsequence", "rep_cusum",
    "rep_continued_fraction", "cfrac_action", "CFRAC_NORMS", "rep_segmented_scan",
    "rep_run_statistics", "rep_left_action_table", "NONASSOC_CARRIER", "NONASSOC_TABLES",
    "nonassoc_op", "GalleryEntry", "REGISTRY", "get", "sample",
]
