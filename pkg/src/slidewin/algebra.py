"""Algebraic contracts shared by every algorithm in the package.

Binary operations, set actions, representations of function composition,
selection operators and the semidirect product used by the vector
algorithms all live here, together with small exhaustive checkers for
finite carriers.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, NamedTuple, Optional, Sequence

MAX_CARRIER = 8


class AlgebraError(ValueError):
    """Base class for algebra-level errors."""


class NotSelective(AlgebraError):
    """Raised when an operation returns something other than one of its arguments."""


class CarrierTooLarge(AlgebraError):
    pass


class _Undefined:
    """Singleton marker for a missing value.

    It compares equal only to itself and prints as ``NA`` so that it
    round-trips through the CSV format used by the command line tool.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NA"

    def __reduce__(self):
        return (_Undefined, ())

    def __bool__(self):
        return False


UNDEF = _Undefined()


def is_undef(x) -> bool:
    return x is UNDEF


@dataclass(frozen=True)
class BinaryOp:
    """A named binary operation.

    ``claims_associative`` is documentation only. Algorithms that need
    associativity say so in their docstrings and never check it.
    """

    apply: Callable[[Any, Any], Any]
    claims_associative: bool = True
    name: str = "op"

    def __call__(self, x, y):
        return self.apply(x, y)

    def opposite(self) -> "BinaryOp":
        f = self.apply
        return BinaryOp(lambda x, y: f(y, x), self.claims_associative, f"op({self.name})")


def as_op(op) -> Callable[[Any, Any], Any]:
    """Accept a BinaryOp or any two-argument callable."""
    if not callable(op):
        raise TypeError(f"expected a callable binary operation, got {type(op).__name__}")
    return op


@dataclass(frozen=True)
class SetAction:
    act: Callable[[Any, Any], Any]
    name: str = "action"

    def __call__(self, a, x):
        return self.act(a, x)


@dataclass(frozen=True)
class FunctionCompositionRep:
    """A representation of function composition (lift, compose, apply).

    ``apply(lift(a), x)`` realises the action ``a . x`` and
    ``apply(l1, apply(l2, x)) == apply(compose(l1, l2), x)``.
    ``compose`` may be nonassociative; only this semi-associativity is
    required by the meta-algorithm.
    """

    lift: Callable[[Any], Any]
    compose: BinaryOp
    apply: Callable[[Any, Any], Any]
    name: str = "rep"

    def act(self, a, x):
        return self.apply(self.lift(a), x)

    def action(self) -> SetAction:
        return SetAction(self.act, self.name)


class SemidirectElement(NamedTuple):
    """The pair <i, a> of the semidirect product Z+ x| A."""

    exponent_index: int
    payload: Any


def semidirect_op(compose: Callable, shift: Callable[[int, Any], Any]) -> BinaryOp:
    """<i,a> * <j,b> = <i+j, compose(a, shift(i, b))>."""

    def prod(u, v):
        i, a = u
        j, b = v
        return SemidirectElement(i + j, compose(a, shift(i, b)))

    assoc = getattr(compose, "claims_associative", True)
    return BinaryOp(prod, assoc, "semidirect")


# -- finite relations and selection operators --------------------------------


@dataclass(frozen=True)
class Relation:
    """A binary relation on a small carrier, stored as a boolean matrix.

    ``carrier`` lists the elements; ``matrix[i][j]`` says whether
    ``carrier[i] R carrier[j]``.
    """

    carrier: tuple
    matrix: tuple

    def __post_init__(self):
        k = len(self.carrier)
        if k < 1 or k > MAX_CARRIER:
            raise CarrierTooLarge(f"carrier size must be in 1..{MAX_CARRIER}, got {k}")
        if len(self.matrix) != k or any(len(row) != k for row in self.matrix):
            raise AlgebraError("relation matrix must be square with side equal to the carrier size")
        object.__setattr__(self, "matrix", tuple(tuple(bool(v) for v in row) for row in self.matrix))
        object.__setattr__(self, "carrier", tuple(self.carrier))

    @classmethod
    def from_predicate(cls, carrier: Iterable, pred: Callable[[Any, Any], bool]) -> "Relation":
        c = tuple(carrier)
        return cls(c, tuple(tuple(bool(pred(x, y)) for y in c) for x in c))

    def index(self, x) -> int:
        return self.carrier.index(x)

    def holds(self, x, y) -> bool:
        return self.matrix[self.index(x)][self.index(y)]

    __call__ = holds


class RelationProperties(NamedTuple):
    reflexive: bool
    connected: bool
    antisymmetric: bool
    transitive: bool


def check_relation_properties(rel: Relation) -> RelationProperties:
    m = rel.matrix
    idx = range(len(rel.carrier))
    reflexive = all(m[i][i] for i in idx)
    connected = all(m[i][j] or m[j][i] for i in idx for j in idx if i != j)
    antisym = all(not (m[i][j] and m[j][i]) for i in idx for j in idx if i != j)
    transitive = all(m[i][k] for i in idx for j in idx for k in idx if m[i][j] and m[j][k])
    return RelationProperties(reflexive, connected, antisym, transitive)


def selection_op_from_relation(rel: Relation) -> BinaryOp:
    """x *_R y = y if x R y else x."""

    def sel(x, y):
        return y if rel.holds(x, y) else x

    props = check_relation_properties(rel)
    assoc = props.reflexive and props.connected and props.transitive
    return BinaryOp(sel, assoc, "select")


def relation_from_op(op, carrier: Iterable) -> Relation:
    """x R_* y  iff  x * y = y.  Raises NotSelective for non-selection ops."""
    c = tuple(carrier)
    if len(c) > MAX_CARRIER:
        raise CarrierTooLarge(f"carrier size {len(c)} exceeds {MAX_CARRIER}")
    rows = []
    for x in c:
        row = []
        for y in c:
            z = op(x, y)
            if z != x and z != y:
                raise NotSelective(f"op({x!r}, {y!r}) = {z!r} is neither argument")
            row.append(z == y)
        rows.append(tuple(row))
    return Relation(c, tuple(rows))


def _check_carrier(carrier) -> tuple:
    c = tuple(carrier)
    if len(c) > MAX_CARRIER:
        raise CarrierTooLarge(f"carrier size {len(c)} exceeds {MAX_CARRIER}")
    return c


def check_associative(op, carrier: Iterable, eq: Callable[[Any, Any], bool] | None = None) -> bool:
    """Exhaustive check of (x*y)*z == x*(y*z) over a finite carrier."""
    c = _check_carrier(carrier)
    same = eq or (lambda u, v: u == v)
    return all(same(op(op(x, y), z), op(x, op(y, z))) for x in c for y in c for z in c)


def find_associativity_failure(op, carrier: Iterable):
    """First (x, y, z) with (x*y)*z != x*(y*z), or None."""
    c = _check_carrier(carrier)
    for x, y, z in itertools.product(c, repeat=3):
        if op(op(x, y), z) != op(x, op(y, z)):
            return (x, y, z)
    return None


def reflexive_relations(carrier: Sequence) -> Iterable[Relation]:
    """Every reflexive relation on the carrier (2^(k^2-k) of them)."""
    c = _check_carrier(carrier)
    k = len(c)
    off = [(i, j) for i in range(k) for j in range(k) if i != j]
    for bits in itertools.product((False, True), repeat=len(off)):
        m = [[i == j for j in range(k)] for i in range(k)]
        for (i, j), b in zip(off, bits):
            m[i][j] = b
        yield Relation(c, tuple(tuple(r) for r in m))


# -- left action closures ----------------------------------------------------


def left_action_table(act: Callable[[Any, Any], Any], a, carrier: Sequence) -> tuple:
    """x -> act(a, x) as a lookup tuple in carrier order (single row form)."""
    return tuple(act(a, x) for x in carrier)


def compose_tables(f: tuple, g: tuple, carrier: Sequence, pos: Optional[Dict] = None) -> tuple:
    """Lookup table of f o g (apply g first).

    ``pos`` maps each carrier element to its index; pass it in hot loops
    to skip rebuilding it.
    """
    if pos is None:
        pos = {x: i for i, x in enumerate(carrier)}
    return tuple(f[pos[y]] for y in g)


def left_action_closure(action, action_elems: Iterable, carrier: Iterable) -> frozenset:
    """Closure under composition of the maps x -> action(a, x).

    Functions are returned as tuples in carrier order. The action is
    semi-associative exactly when every composite is again a left action
    map, so comparing the closure with the generator set decides it.
    """
    c = _check_carrier(carrier)
    act = action.act if isinstance(action, SetAction) else action
    gens = {left_action_table(act, a, c) for a in action_elems}
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for f in frontier:
            for g in gens:
                for h in (compose_tables(f, g, c), compose_tables(g, f, c)):
                    if h not in seen:
                        seen.add(h)
                        new.append(h)
        frontier = new
    return frozenset(seen)


def is_semi_associative(action, action_elems: Iterable, carrier: Iterable) -> bool:
    elems = tuple(action_elems)
    c = _check_carrier(carrier)
    act = action.act if isinstance(action, SetAction) else action
    gens = {left_action_table(act, a, c) for a in elems}
    return left_action_closure(act, elems, c) == frozenset(gens)


def table_op(carrier: Sequence, rows: Sequence[Sequence]) -> BinaryOp:
    """Binary operation from a multiplication table, rows indexed by the left operand."""
    c = tuple(carrier)
    pos = {x: i for i, x in enumerate(c)}
    t = tuple(tuple(r) for r in rows)
    return BinaryOp(lambda x, y: t[pos[x]][pos[y]], False, "table")


# -- structural equality -----------------------------------------------------


def approx_equal(x, y, rel_tol: float = 1e-9, abs_tol: float = 1e-9) -> bool:
    """Field-by-field equality with a float tolerance.

    Floats compare with ``math.isclose``; tuples, lists and dicts recurse;
    everything else uses ``==``.
    """
    if isinstance(x, bool) or isinstance(y, bool):
        return x == y
    if isinstance(x, float) or isinstance(y, float):
        if not isinstance(x, (int, float)) or not isinstance(y, (int, float)):
            return False
        if math.isnan(x) or math.isnan(y):
            return math.isnan(x) and math.isnan(y)
        if math.isinf(x) or math.isinf(y):
            return x == y
        return math.isclose(x, y, rel_tol=rel_tol, abs_tol=abs_tol)
    if isinstance(x, (tuple, list)) and isinstance(y, (tuple, list)):
        return len(x) == len(y) and all(approx_equal(a, b, rel_tol, abs_tol) for a, b in zip(x, y))
    if isinstance(x, dict) and isinstance(y, dict):
        return x.keys() == y.keys() and all(approx_equal(x[k], y[k], rel_tol, abs_tol) for k in x)
    return x == y


def rep_properties_hold(rep: FunctionCompositionRep, action, samples_a, samples_x,
                        eq=approx_equal) -> bool:
    """Check lift faithfulness and semi-associativity on the given samples."""
    act = action.act if isinstance(action, SetAction) else action
    lifted = [rep.lift(a) for a in samples_a]
    for a, la in zip(samples_a, lifted):
        for x in samples_x:
            if not eq(rep.apply(la, x), act(a, x)):
                return False
    for l1 in lifted:
        for l2 in lifted:
            c = rep.compose(l1, l2)
            for x in samples_x:
                if not eq(rep.apply(l1, rep.apply(l2, x)), rep.apply(c, x)):
                    return False
    return True


__all__ = [
    "AlgebraError", "NotSelective", "CarrierTooLarge", "UNDEF", "is_undef",
    "BinaryOp", "SetAction", "FunctionCompositionRep", "SemidirectElement",
    "Relation", "RelationProperties", "as_op", "semidirect_op",
    "selection_op_from_relation", "relation_from_op", "check_associative",
    "find_associativity_failure", "check_relation_properties", "reflexive_relations",
    "left_action_table", "compose_tables", "left_action_closure", "is_semi_associative",
    "table_op", "approx_equal", "rep_properties_hold", "MAX_CARRIER",
]
