
import pytest

from slidewin.algebra import (UNDEF, BinaryOp, CarrierTooLarge, FunctionCompositionRep, NotSelective,
                              Relation, SemidirectElement, approx_equal, check_associative,
                              check_relation_properties, is_semi_associative, is_undef,
                              left_action_closure, reflexive_relations, rep_properties_hold,
                              relation_from_op, selection_op_from_relation, semidirect_op, table_op)
from slidewin.gallery import NONASSOC_CARRIER, nonassoc_op, op_coalesce

C3 = (0, 1, 2)


def leq():
    return Relation.from_predicate(C3, lambda x, y: x <= y)


def test_selection_op_from_leq_is_max():
    op = selection_op_from_relation(leq())
    assert op(1, 2) == 2 and op(2, 1) == 2
    assert all(op(x, y) == max(x, y) for x in C3 for y in C3)


def test_equality_relation_gives_first():
    op = selection_op_from_relation(Relation.from_predicate("abc", lambda x, y: x == y))
    assert all(op(x, y) == x for x in "abc" for y in "abc")


def test_full_relation_gives_second():
    op = selection_op_from_relation(Relation.from_predicate("abc", lambda x, y: True))
    assert all(op(x, y) == y for x in "abc" for y in "abc")


def test_relation_from_max_is_leq():
    rel = relation_from_op(BinaryOp(max), C3)
    assert all(rel(x, y) == (x <= y) for x in C3 for y in C3)


def test_relation_from_coalesce():
    carrier = (UNDEF, "b", "c")
    rel = relation_from_op(op_coalesce(), carrier)
    for x in carrier:
        for y in carrier:
            assert rel(x, y) == (x is UNDEF or x == y)


def test_relation_from_non_selective_op_raises():
    with pytest.raises(NotSelective):
        relation_from_op(BinaryOp(lambda x, y: x + y), (1, 2))


def test_carrier_cap():
    with pytest.raises(CarrierTooLarge):
        check_associative(BinaryOp(max), range(9))


def test_check_associative_examples():
    assert check_associative(BinaryOp(max), C3)
    assert not check_associative(nonassoc_op("nonassoc4"), NONASSOC_CARRIER)
    op = nonassoc_op("nonassoc4")
    assert op("a", op("b", "c")) == "b" and op(op("a", "b"), "c") == "c"


def test_relation_properties():
    p = check_relation_properties(leq())
    assert p.reflexive and p.connected and p.antisymmetric and p.transitive
    eq = check_relation_properties(Relation.from_predicate(C3, lambda x, y: x == y))
    assert eq.reflexive and eq.antisymmetric and eq.transitive and not eq.connected


def test_rock_paper_scissors_relation_is_intransitive():
    # a R b, b R c, c R a plus the diagonal
    pairs = {("a", "b"), ("b", "c"), ("c", "a")}
    rel = Relation.from_predicate("abc", lambda x, y: x == y or (x, y) in pairs)
    p = check_relation_properties(rel)
    assert p.reflexive and p.antisymmetric and p.connected and not p.transitive
    assert not check_associative(selection_op_from_relation(rel), "abc")


def test_reflexive_relation_round_trips():
    rels = list(reflexive_relations(C3))
    assert len(rels) == 64
    for rel in rels:
        op = selection_op_from_relation(rel)
        assert all(op(x, x) == x for x in C3)
        assert relation_from_op(op, C3) == rel


def test_connected_relations_associative_iff_transitive():
    for rel in reflexive_relations(C3):
        p = check_relation_properties(rel)
        if p.connected:
            assert check_associative(selection_op_from_relation(rel), C3) == p.transitive


def test_intransitive_count():
    assert sum(not check_relation_properties(r).transitive for r in reflexive_relations(C3)) == 35


def _pad_shift(i, a):
    return [0] * min(i, len(a)) + list(a[:max(len(a) - i, 0)])


def test_semidirect_op():
    op = semidirect_op(lambda u, v: [x + y for x, y in zip(u, v)], _pad_shift)
    assert op(SemidirectElement(1, [1, 2, 3]), SemidirectElement(1, [1, 2, 3])) == (2, [1, 3, 5])
    r = op((2, [1, 1, 1, 1]), (3, [5, 6, 7, 8]))
    assert r.exponent_index == 5 and r.payload == [1, 1, 6, 7]


@pytest.mark.parametrize("name,size", [("nonassoc1", 5), ("nonassoc3", 21), ("nonassoc4", 27)])
def test_left_action_closure_sizes(name, size):
    op = nonassoc_op(name)
    assert len(left_action_closure(op, NONASSOC_CARRIER, NONASSOC_CARRIER)) == size


def test_nonassoc1_closure_members():
    op = nonassoc_op("nonassoc1")
    closure = left_action_closure(op, NONASSOC_CARRIER, NONASSOC_CARRIER)
    rows = {"".join(t) for t in closure}
    assert rows == {"aba", "abb", "ccc", "aaa", "bbb"}


def test_semi_associativity_detection():
    assert is_semi_associative(BinaryOp(max), C3, C3)
    assert not is_semi_associative(nonassoc_op("nonassoc4"), NONASSOC_CARRIER, NONASSOC_CARRIER)


def test_table_op_rows_indexed_by_left_operand():
    op = table_op("ab", [("a", "a"), ("b", "a")])
    assert op("b", "a") == "b" and op("a", "b") == "a"


def test_undef_marker():
    assert is_undef(UNDEF) and not is_undef(0)
    assert repr(UNDEF) == "NA"


def test_approx_equal_structural():
    assert approx_equal((1.0, [2.0, 3]), (1.0 + 1e-12, [2.0, 3]))
    assert not approx_equal((1.0, 2), (1.0, 3))
    assert not approx_equal(1.0, 1.1)
    assert approx_equal(float("inf"), float("inf"))


def test_rep_property_check_detects_bad_compose():
    good = FunctionCompositionRep(lambda a: a, BinaryOp(lambda x, y: x + y), lambda z, x: z + x)
    bad = FunctionCompositionRep(lambda a: a, BinaryOp(lambda x, y: x * y), lambda z, x: z + x)
    act = lambda a, x: a + x
    assert rep_properties_hold(good, act, [1, 2, 3], [0, 5])
    assert not rep_properties_hold(bad, act, [1, 2, 3], [0, 5])


def test_bracketing_independence_of_applied_rep():
    # the non-associative continued fraction compose still applies consistently
    from slidewin.gallery import rep_continued_fraction
    rep = rep_continued_fraction("left_norm")
    ls = [rep.lift(a) for a in (1.5, 2.0, 0.7)]
    c = rep.compose
    left = rep.apply(c(c(ls[0], ls[1]), ls[2]), 1.3)
    right = rep.apply(c(ls[0], c(ls[1], ls[2])), 1.3)
    assert approx_equal(left, right, rel_tol=1e-12)
    assert not approx_equal(c(c(ls[0], ls[1]), ls[2]), c(ls[0], c(ls[1], ls[2])))
