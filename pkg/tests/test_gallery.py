import math
import random
from fractions import Fraction

import pytest

from slidewin import gallery
from slidewin.algebra import UNDEF, approx_equal, check_associative, rep_properties_hold
from slidewin.cli import run_algorithm
from slidewin.gallery import (NONASSOC_CARRIER, REGISTRY, cfrac_action, op_coalesce, op_product,
                              op_sum, rep_argmax, rep_continued_fraction, rep_linear_recurrence,
                              rep_max_count)
from slidewin.sequential import naive_window, naive_windowed_recurrence


def run(name, items, n, algo="naive"):
    return run_algorithm(algo, gallery.get(name), items, n)


def test_linrec_compose_example():
    assert rep_linear_recurrence().compose((2, 3), (4, 5)) == (8, 13)


def test_argmax_modes():
    data = [(5, 1), (7, 2), (7, 3)]
    for mode, want in [("earliest", (7, 2)), ("latest", (7, 3))]:
        op = rep_argmax(mode)
        assert naive_window(op, data, 3)[-1] == want
    op = rep_argmax("set")
    got = naive_window(op, [(v, frozenset([i])) for v, i in data], 3)[-1]
    assert got == (7, frozenset({2, 3}))


def test_argmax_via_registry_indexing():
    assert run("argmax.earliest", [5, 7, 7], 3)[-1] == (7, 2)
    assert run("argmax.latest", [5, 7, 7], 3)[-1] == (7, 3)


def test_max_count():
    assert run("maxcount", [3, 7, 7, 2], 4)[-1] == (7, 2)
    assert rep_max_count()((7, 1), (7, 2)) == (7, 3)


def test_undefined_absorbs_in_sum_and_product():
    assert op_sum()(1, UNDEF) is UNDEF and op_sum()(UNDEF, 2) is UNDEF
    assert op_product()(UNDEF, 0) is UNDEF


def test_coalesce_keeps_newest_defined():
    c = op_coalesce()
    assert c(UNDEF, 4) == 4 and c(3, 4) == 3 and c(UNDEF, UNDEF) is UNDEF


def test_max_contiguous_subsequence():
    data = [-2, 1, -3, 4, -1, 2, 1, -5, 4]
    assert run("maxcontig", data, len(data))[-1] == 6
    for algo in ("dew1", "twostacks:cie", "daba", "vector:binary"):
        assert run("maxcontig", data, 9, algo)[-1] == 6


def test_max_contiguous_window_matches_brute_force(rng):
    for _ in range(100):
        data = [rng.randint(-5, 5) for _ in range(rng.randint(1, 20))]
        n = rng.randint(1, 6)
        got = run("maxcontig", data, n, "dew2")
        for i in range(len(data)):
            w = data[max(0, i - n + 1):i + 1]
            best = max([0] + [sum(w[s:e]) for s in range(len(w)) for e in range(s + 1, len(w) + 1)])
            assert got[i] == best


def test_run_statistics():
    assert run("runstats", [1, 2, -1, 3, 4, 5], 6) == [1, 2, 0, 1, 2, 3]


def test_sum_missing():
    assert run("summissing", [1, UNDEF, 2], 3)[-1] == 3
    assert run("summissing", [1, UNDEF, 2], 3, "twostacks:ei")[-1] == 3


def test_sum_scale_missing():
    out = run("sumscalemissing", [(1, 1), (2, UNDEF), (1, 3)], 3)
    assert out[-1] == 3 + 1 * (2 * 1)


def test_ewma_type2_constant_input_gives_constant():
    out = run("ewma2", [1.0] * 10, 4, "dew1")
    assert all(math.isclose(y, 1.0) for y in out)


def test_ewma_type1_steady_state():
    out = run("ewma1", [2.0] * 60, 60)
    assert math.isclose(out[-1], 2.0, rel_tol=1e-12)


def test_ewms_window():
    out = run("ewms", [1.0] * 5, 3)
    assert math.isclose(out[-1], 1.75)
    e = gallery.get("ewms")
    z = e.rep.compose(e.rep.lift(1.0), e.rep.compose(e.rep.lift(1.0), e.rep.lift(1.0)))
    assert math.isclose(z[0], 0.125)


def test_max_of_sum():
    out = run("maxofsum", [1, -2, 3, -1], 4)
    assert out == [1, 1, 2, 2]


def test_cusum_resets_at_zero():
    out = run("cusum", [(3, 1), (0, 5), (4, 1)], 3)
    assert out == [2, 0, 3]


def test_segmented_scan():
    items = [(1, False), (2, False), (5, True), (1, False)]
    assert run("segscan", items, 4) == [1, 3, 5, 6]


def test_continued_fraction_three_ones():
    for norm in gallery.CFRAC_NORMS:
        out = run(f"cfrac.{norm}", [1.0, 1.0, 1.0], 3, "dew1")
        assert math.isclose(out[-1], 1.5, rel_tol=1e-9)


def test_continued_fraction_action_edge_cases():
    assert cfrac_action(2, math.inf) == 2.0
    assert cfrac_action(2, 0) == math.inf


def test_left_norm_compose_is_not_associative(rng):
    c = rep_continued_fraction("left_norm").compose
    assert not c.claims_associative
    A, B, C = (((rng.uniform(0.5, 3), 1), (1, 0)) for _ in range(3))
    assert not approx_equal(c(c(A, B), C), c(A, c(B, C)))


def test_exact_continued_fraction_with_fractions():
    rep = rep_continued_fraction("none")
    out = naive_windowed_recurrence(cfrac_action, [Fraction(1)] * 6, math.inf, 6)
    assert out[-1] == Fraction(13, 8)
    z = rep.lift(Fraction(1))
    for _ in range(5):
        z = rep.compose(rep.lift(Fraction(1)), z)
    assert rep.apply(z, math.inf) == Fraction(13, 8)


@pytest.mark.parametrize("name", [n for n, e in REGISTRY.items() if e.kind == "rep"])
def test_rep_properties(name):
    e = REGISTRY[name]
    rng = random.Random(name)
    items = e.prepared(gallery.sample(e, rng, 60))
    # reachable states: run the action from x0 over random inputs
    xs = [e.x0]
    for a in items:
        xs.append(e.action(a, xs[-1]))
    eq = (lambda u, v: u == v) if e.exact else (lambda u, v: approx_equal(u, v, rel_tol=e.tol, abs_tol=e.tol))
    assert rep_properties_hold(e.rep, e.action, items[:30], xs[::3], eq)


@pytest.mark.parametrize("name", [n for n, e in REGISTRY.items() if e.associative])
def test_registry_compose_is_associative_on_samples(name):
    e = REGISTRY[name]
    rng = random.Random("assoc" + name)
    items = e.prepared(gallery.sample(e, rng, 90))
    lifted = items if e.kind == "op" else [e.rep.lift(a) for a in items]
    op = e.compose
    for a, b, c in zip(lifted[0::3], lifted[1::3], lifted[2::3]):
        left, right = op(op(a, b), c), op(a, op(b, c))
        assert (left == right) if e.exact else approx_equal(left, right, rel_tol=e.tol, abs_tol=e.tol)


def test_nonassoc_tables_are_not_associative():
    for name in gallery.NONASSOC_TABLES:
        assert not check_associative(gallery.nonassoc_op(name), NONASSOC_CARRIER)


def test_unknown_names():
    with pytest.raises(KeyError):
        gallery.get("nope")
    with pytest.raises(ValueError):
        rep_argmax("middle")
    with pytest.raises(ValueError):
        rep_continued_fraction("two_norm")
