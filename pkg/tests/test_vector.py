import math
from fractions import Fraction

import pytest

from slidewin.algebra import FunctionCompositionRep
from slidewin.exponentiation import binary_count, exponentiator
from slidewin.gallery import op_min_total_order, op_sum, rep_continued_fraction
from slidewin.sequential import naive_window
from slidewin.vector import (ONE, FixedLenScheme, VarLenScheme, joint_prefix_and_window,
                             multi_window_compose, prefix_scan, rep_action_context, window_apply,
                             window_compose, window_continued_fraction, window_linear_recurrence,
                             window_power, window_sum_with_scale_changes)


def counting(calls):
    def wrap(op):
        def f(u, v):
            calls.append(1)
            return op(u, v)
        return f
    return wrap


def test_fixed_len_sum():
    ctx = FixedLenScheme(op_sum(), 0).context()
    assert window_compose(ctx, [1, 2, 3, 4, 5], 3) == [1, 3, 6, 9, 12]


def test_window_one_is_free():
    calls = []
    ctx = FixedLenScheme(op_sum(), 0).context()
    assert window_compose(ctx, [4, 5, 6], 1, op_wrapper=counting(calls)) == [4, 5, 6]
    assert calls == []


def test_var_len_min_without_identity():
    ctx = VarLenScheme(op_min_total_order()).context()
    a = [3, 1, 4, 1, 5]
    assert window_compose(ctx, a, 2) == naive_window(op_min_total_order(), a, 2) == [3, 1, 1, 1, 1]


def test_var_len_compose_both_orders():
    s = VarLenScheme(lambda x, y: x + y)
    assert s.compose(["a", "b", "c"], ["x"]) == ["a", "b", "cx"]
    assert s.compose(["x"], ["a", "b", "c"]) == ["a", "b", "xc"]
    assert s.shift(2, ["a", "b", "c"]) == ["a"]
    assert s.shift(5, ["a"]) == []


def test_fixed_len_adjoined_identity():
    s = FixedLenScheme(lambda x, y: x + y)
    assert s.shift(2, ["a", "b", "c"]) == [ONE, ONE, "a"]
    assert s.compose([ONE, "b"], ["a", ONE]) == ["a", "b"]


def test_shift_laws():
    for s in (FixedLenScheme(lambda x, y: x + y), VarLenScheme(lambda x, y: x + y)):
        a, b = list("abcdef"), list("uvwxyz")
        for i in range(1, 7):
            for j in range(1, 7):
                assert s.shift(i, s.shift(j, a)) == s.shift(i + j, a)
            assert s.shift(i, s.compose(a, b)) == s.compose(s.shift(i, a), s.shift(i, b))


def test_exponent_bookkeeping():
    ctx = VarLenScheme(lambda x, y: x + y).context()
    for n in range(1, 30):
        for f in (exponentiator("binary"), exponentiator("parallel"), exponentiator("thurber", k=3)):
            assert window_power(ctx, list("abcdefgh"), n, f).exponent_index == n


def test_sum_with_scale_changes():
    assert window_sum_with_scale_changes([1, 1, 1, 1], [1, 2, 3, 4], 3) == [1, 3, 6, 9]
    assert window_sum_with_scale_changes([2, 2, 2], [1, 2, 3], 2) == [1, 4, 7]
    assert window_sum_with_scale_changes([5, 5], [1, 2], 1) == [1, 2]


def test_linear_recurrence_window():
    u, v = [2, 3, 1, 2], [1, 1, 1, 1]
    out = window_linear_recurrence(u, v, [10, 20, 30, 40], 2, x0=0)
    # y_3 = v3 + u3 (v2 + u2 x_1)
    assert out[2] == 1 + 1 * (1 + 3 * 10)
    assert out[0] == 1 and out[1] == 1 + 3 * 1


def test_continued_fraction_convergent():
    out = window_continued_fraction([1.0] * 6, 6)
    assert math.isclose(out[-1], 13 / 8, rel_tol=1e-12)
    assert math.isclose(out[2], 3 / 2, rel_tol=1e-12)


def test_continued_fraction_exact_with_fractions():
    rep = rep_continued_fraction("none")
    ctx = rep_action_context(rep, math.inf, identity=((1, 0), (0, 1)))
    a = [Fraction(k) for k in (2, 1, 3, 1, 4)]
    out = window_apply(ctx, 3, a, [math.inf] * 5)
    assert out[4] == 4 + 1 / (1 + Fraction(1, 3))


def test_window_apply_trivial_window():
    rep = FunctionCompositionRep(lambda a: a, lambda x, y: x + y, lambda z, x: z + x)
    ctx = rep_action_context(rep, 100)
    assert window_apply(ctx, 1, [1, 2, 3], [10, 20, 30]) == [1 + 100, 2 + 10, 3 + 20]


def test_multi_window_compose():
    ctx = FixedLenScheme(op_sum(), 0).context()
    a = list(range(1, 21))
    calls = []
    outs = multi_window_compose(ctx, a, (2, 4, 8), op_wrapper=counting(calls))
    assert len(calls) == 3
    for n, out in zip((2, 4, 8), outs):
        assert out == naive_window(op_sum(), a, n)
    outs = multi_window_compose(ctx, a, (3, 12))
    assert outs[1] == naive_window(op_sum(), a, 12)
    assert multi_window_compose(ctx, a, (5,))[0] == window_compose(ctx, a, 5)


def test_prefix_scan():
    ctx = FixedLenScheme(op_sum(), 0).context()
    calls = []
    assert prefix_scan(ctx, [1] * 8, op_wrapper=counting(calls)) == list(range(1, 9))
    assert len(calls) == 3
    mctx = VarLenScheme(lambda x, y: max(x, y)).context()
    assert prefix_scan(mctx, [3, 1, 4, 1, 5]) == [3, 3, 4, 4, 5]


def test_joint_prefix_and_window():
    ctx = FixedLenScheme(op_sum(), 0).context()
    a = list(range(16))
    stats = {}
    w, p = joint_prefix_and_window(ctx, a, 4, stats=stats)
    assert w == naive_window(op_sum(), a, 4) and p == naive_window(op_sum(), a, 16)
    assert stats["calls"] <= binary_count(4) + 2
    stats = {}
    w, p = joint_prefix_and_window(ctx, a[:5], 5, stats=stats)
    assert w == p and stats["squarings"] == 0
    stats = {}
    joint_prefix_and_window(ctx, list(range(8)), 3, chain_method="parallel", stats=stats)
    assert stats["parallel_steps"] == 4 <= math.ceil(math.log2(8)) + 1


def test_joint_rejects_long_window():
    ctx = FixedLenScheme(op_sum(), 0).context()
    with pytest.raises(ValueError):
        joint_prefix_and_window(ctx, [1, 2], 3)


def test_left_norm_nonassociative_yet_method_independent():
    rep = rep_continued_fraction("left_norm")
    ctx = rep_action_context(rep, math.inf)
    a = [1.5, 0.7, 2.2, 1.1, 3.0, 0.9, 1.3, 2.5, 0.6, 1.8]
    outs = []
    for f in (exponentiator("binary"), exponentiator("binary", flip=True), exponentiator("thurber", k=2)):
        outs.append(window_apply(ctx, 7, a, [math.inf] * len(a), f))
    for o in outs[1:]:
        assert all(math.isclose(x, y, rel_tol=1e-9) for x, y in zip(o, outs[0]))
