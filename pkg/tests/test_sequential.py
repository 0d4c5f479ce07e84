import math
import string

import pytest

from slidewin.algebra import UNDEF, BinaryOp
from slidewin.gallery import op_coalesce, op_concat, op_max_total_order, op_subtract, op_sum
from slidewin.opcount import instrument
from slidewin.sequential import (ASSOCIATIVE_ALGORITHMS, BasicDew, DabaLite, DewAggregator,
                                 EmptyWindow, NonMonotonicTimestamp, SentinelDew, SlickDeque,
                                 TimeBasedWindow, TwoStacksAggregator, TwoStacksVariant,
                                 difference_of_prefix_sums, dew, meta_windowed_recurrence,
                                 naive_window, naive_windowed_recurrence,
                                 nonassociative_window_product, prefix_sums, run_fixed_window,
                                 subtract_on_evict, time_based_window, two_stacks,
                                 window_algorithm)

ADD = op_sum()
CAT = op_concat()


def test_naive_sum():
    assert naive_window(ADD, [1, 2, 3, 4, 5], 2) == [1, 3, 5, 7, 9]


def test_naive_window_of_one_is_identity():
    assert naive_window(CAT, list("abc"), 1) == list("abc")


def test_naive_coalesce_fill_forward():
    assert naive_window(op_coalesce(), [5, UNDEF, UNDEF, 7], 2) == [5, 5, UNDEF, 7]
    assert naive_window(op_coalesce(), [5, UNDEF, UNDEF, 7], 3) == [5, 5, 5, 7]


def test_naive_rejects_bad_window():
    with pytest.raises(ValueError):
        naive_window(ADD, [1], 0)


def test_subtract_on_evict_undef_table():
    data = [0, -1, 5, UNDEF, 7, 5, 1, -3]
    out = subtract_on_evict(ADD, op_subtract(), data, 3)
    assert out == [0, -1, 4, UNDEF, UNDEF, UNDEF, UNDEF, UNDEF]
    # the naive fold recovers once the undefined value leaves the window
    assert naive_window(ADD, data, 3)[-1] == 3


def test_subtract_on_evict_integers_match_naive():
    data = list(range(1, 11))
    assert subtract_on_evict(ADD, op_subtract(), data, 3) == naive_window(ADD, data, 3)


def test_difference_of_prefix_sums():
    assert difference_of_prefix_sums(ADD, op_subtract(), list(range(1, 7)), 2) == [1, 3, 5, 7, 9, 11]
    out = difference_of_prefix_sums(ADD, op_subtract(), [1, 2, UNDEF, 4, 5, 6], 2)
    assert out[:2] == [1, 3] and all(v is UNDEF for v in out[2:])


def test_prefix_sums():
    assert prefix_sums(ADD, [1, 2, 3]) == [1, 3, 6]


@pytest.mark.parametrize("variant", list(TwoStacksVariant))
def test_two_stacks_concat(variant):
    data = list(string.ascii_lowercase[:10])
    out = two_stacks(CAT, variant, data, 4)
    assert out == naive_window(CAT, data, 4)
    assert out[6] == "gfed"


def test_two_stacks_cie_count_and_increments():
    op = instrument(ADD)
    two_stacks(op, "cie", list(range(10)), 4)
    assert op.total == 15
    assert op.increments() == [0, 1, 1, 1, 3, 1, 2, 2, 1, 3]


def test_two_stacks_window_one_costs_nothing():
    op = instrument(ADD)
    assert two_stacks(op, "cie", [1, 2, 3], 1) == [1, 2, 3]
    assert op.total == 0


def test_two_stacks_variant_parse():
    assert TwoStacksVariant.parse("V3") is TwoStacksVariant.Variant3
    assert TwoStacksVariant.parse("insertevict") is TwoStacksVariant.InsertEvict
    with pytest.raises(ValueError):
        TwoStacksVariant.parse("v9")


def test_dew_variant1_increments_even_window():
    op = instrument(ADD)
    dew(op, 1, list(range(12)), 4)
    assert op.increments()[:8] == [0, 1, 1, 3, 1, 3, 1, 3]


def test_dew_total():
    op = instrument(ADD)
    dew(op, 1, list(range(10)), 4)
    assert op.total == 17


def test_dew_window_two():
    op = instrument(ADD)
    dew(op, 1, list(range(9)), 2)
    assert op.total == 8 and max(op.increments()) <= 1


@pytest.mark.parametrize("variant", [1, 2])
def test_dew_implementations_agree(variant):
    data = list(string.ascii_lowercase)
    for n in range(1, 12):
        ref = naive_window(CAT, data, n)
        assert dew(CAT, variant, data, n, implementation="basic") == ref
        assert dew(CAT, variant, data, n, implementation="sentinel") == ref


def test_dew_classes_exposed():
    assert BasicDew and SentinelDew


def test_daba_lite_variable_window(rng):
    agg = DabaLite(CAT)
    window = []
    for _ in range(3000):
        if window and rng.random() < 0.45:
            agg.evict()
            window.pop(0)
        else:
            c = rng.choice("abcdef")
            agg.insert(c)
            window.append(c)
        if window:
            assert agg.query() == "".join(reversed(window))
        assert len(agg) == len(window)


def test_daba_lite_empty_errors():
    agg = DabaLite(ADD)
    with pytest.raises(EmptyWindow):
        agg.query()
    with pytest.raises(EmptyWindow):
        agg.evict()


def test_daba_lite_bounds_steady_state():
    op = instrument(ADD)
    run_fixed_window(DabaLite(op), list(range(100)), 10)
    assert op.total <= 400 and max(op.increments()) <= 6


def test_daba_lite_prefix_when_never_evicted():
    agg = DabaLite(CAT)
    for c in "abcde":
        agg.insert(c)
    assert agg.query() == "edcba"


def test_slick_deque_walkthrough():
    agg = SlickDeque(op_max_total_order())
    for v in [1, 3, 6, 2, 5, 1, 4]:
        agg.insert(v)
    assert agg.state() == [(6, 3), (5, 5), (4, 7)]
    assert agg.query() == 6
    for v in [1, 5]:
        agg.evict()
        agg.insert(v)
    assert agg.state() == [(6, 3), (5, 9)]
    assert agg.query() == 6


def test_slick_deque_coalesce_matches_naive(rng):
    op = op_coalesce()
    for _ in range(200):
        data = [UNDEF if rng.random() < 0.5 else rng.randint(0, 9) for _ in range(rng.randint(1, 40))]
        n = rng.randint(1, 8)
        assert run_fixed_window(SlickDeque(op), data, n) == naive_window(op, data, n)


def test_slick_deque_empty_errors():
    agg = SlickDeque(op_max_total_order())
    with pytest.raises(EmptyWindow):
        agg.query()


def test_two_stacks_aggregator_streaming(rng):
    agg = TwoStacksAggregator(CAT)
    window = []
    for _ in range(1000):
        if window and rng.random() < 0.4:
            agg.evict()
            window.pop(0)
        else:
            c = rng.choice("xyz")
            agg.insert(c)
            window.append(c)
        if window:
            assert agg.query() == "".join(reversed(window))


def test_dew_aggregator_fixed_steps():
    agg = DewAggregator(CAT, 3)
    out = [agg.combined_insert_evict(c) if len(agg) == 3 else _ins(agg, c) for c in "abcdef"]
    assert out == naive_window(CAT, list("abcdef"), 3)


def _ins(agg, c):
    agg.insert(c)
    return agg.query()


def test_time_based_window():
    assert time_based_window(DabaLite(ADD), 10, [(0, 1), (5, 2), (11, 4)]) == [1, 3, 6]
    assert time_based_window(DabaLite(ADD), 0, [(0, 1), (0, 2), (3, 4)]) == [1, 3, 4]
    assert time_based_window(DabaLite(ADD), math.inf, [(0, 1), (5, 2), (99, 4)]) == [1, 3, 7]


def test_time_based_window_rejects_backwards_time():
    w = TimeBasedWindow(DabaLite(ADD), 5)
    w.push(3, 1)
    with pytest.raises(NonMonotonicTimestamp):
        w.push(2, 1)


def test_windowed_recurrence_and_meta():
    act = lambda a, x: a + 2 * x
    from slidewin.algebra import FunctionCompositionRep
    rep = FunctionCompositionRep(lambda a: (2, a), BinaryOp(lambda p, q: (p[0] * q[0], p[1] + p[0] * q[1])),
                                 lambda z, x: z[1] + z[0] * x)
    data = [3, 1, 4, 1, 5, 9, 2, 6]
    xs = [10, 20, 30, 40, 50, 60, 70, 80, 90]
    ref = naive_windowed_recurrence(act, data, xs, 3)
    # y_4 = 1 + 2(4 + 2(1 + 2 x_1))
    assert ref[3] == 1 + 2 * (4 + 2 * (1 + 2 * 20))
    for name in ASSOCIATIVE_ALGORITHMS:
        assert meta_windowed_recurrence(rep, data, xs, 3, window_algorithm(name)) == ref


def test_nonassociative_window_product_matches_naive():
    from slidewin.gallery import NONASSOC_CARRIER, nonassoc_op
    op = nonassoc_op("nonassoc3")
    data = list("abcabbcacbca")
    for n in range(1, 8):
        got = nonassociative_window_product(op, NONASSOC_CARRIER, data, n, window_algorithm("dew1"))
        assert got == naive_window(op, data, n)


def test_unknown_algorithm_name():
    with pytest.raises(KeyError):
        window_algorithm("nope")
