"""Exponentiation in semigroups by addition chains.

Binary (sequential and as a parallel schedule), Brauer's and Thurber's
windowed methods, chain recording and replay, operation counters, best-k
search, and a brute-force optimal chain search for small exponents.

All ``*_exponentiate`` functions take ``op`` first and only ever call
``op``; for an associative op they all return the same power. ``flip``
computes with the opposite operator without building it.
"""
from __future__ import annotations

import math
from concurrent.futures import Executor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple


class InvalidChain(ValueError):
    pass


def _check_exponent(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"exponent must be a positive integer, got {n!r}")


def _check_k(k):
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


# -- binary ------------------------------------------------------------------

BINARY_VARIANTS = ("up-right", "up-left", "down-left", "down-right")


def binary_exponentiate(op, x, n: int, flip: bool = False, variant: Optional[str] = None):
    """x^n by least-significant-first digit extraction.

    With ``flip=False`` the fold is ``q = op(z, q)`` and with ``flip=True``
    it is ``q = op(q, z)``. ``variant`` selects one of the four orderings
    explicitly; ``up-right`` and ``up-left`` are the same as flip False and
    True. Uses (bit length - 1) squarings plus (popcount - 1) products.
    """
    _check_exponent(n)
    if variant is not None:
        if variant not in BINARY_VARIANTS:
            raise ValueError(f"unknown binary variant {variant!r}")
        if variant.startswith("down"):
            return _binary_down(op, x, n, left=(variant == "down-left"))
        flip = variant == "up-left"
    q = z = x
    first = True
    while True:
        if n & 1:
            if first:
                q, first = z, False
            else:
                q = op(q, z) if flip else op(z, q)
        n >>= 1
        if n == 0:
            return q
        z = op(z, z)


def _binary_down(op, x, n, left):
    powers = []
    z = x
    while True:
        if n & 1:
            powers.append(z)
        n >>= 1
        if n == 0:
            break
        z = op(z, z)
    q = powers[-1]
    for p in reversed(powers[:-1]):
        q = op(q, p) if left else op(p, q)
    return q


def binary_count(n: int) -> int:
    _check_exponent(n)
    return n.bit_length() - 1 + bin(n).count("1") - 1


# -- parallel binary ---------------------------------------------------------


@dataclass(frozen=True)
class Mult:
    """One multiplication: node ``target`` = node ``left`` * node ``right``."""

    target: int
    left: int
    right: int


@dataclass(frozen=True)
class ParallelSchedule:
    """Steps of independent multiplications over numbered nodes.

    Node 0 is the input x; every multiplication creates a new node. The
    result is node ``result``.
    """

    steps: Tuple[Tuple[Mult, ...], ...]
    result: int = 0

    @property
    def depth(self) -> int:
        return len(self.steps)

    def is_valid(self) -> bool:
        ready = {0}
        for step in self.steps:
            written = set()
            for m in step:
                if m.left not in ready or m.right not in ready:
                    return False
                written.add(m.target)
            ready |= written
        return self.result in ready


def parallel_binary_exponentiate(op, x, n: int, flip: bool = False):
    """x^n together with the parallel schedule used to compute it.

    Within a step, the fold ``q`` and the squaring ``z`` are independent.
    The schedule depth is ceil(log2 n).
    """
    _check_exponent(n)
    vals: List[Any] = [x]
    steps: List[Tuple[Mult, ...]] = []
    q = z = 0
    first = True

    def mul(a, b):
        vals.append(op(vals[a], vals[b]))
        return len(vals) - 1

    while True:
        n_next = n >> 1
        odd = n & 1
        if not first and odd and n_next != 0:
            nq = mul(q, z) if flip else mul(z, q)
            nz = mul(z, z)
            steps.append((Mult(nq, *((q, z) if flip else (z, q))), Mult(nz, z, z)))
            q, z = nq, nz
        elif not first and odd:
            nq = mul(q, z) if flip else mul(z, q)
            steps.append((Mult(nq, *((q, z) if flip else (z, q))),))
            q = nq
        else:
            if odd:
                q = z
                first = False
            if n_next == 0:
                return vals[q], ParallelSchedule(tuple(steps), q)
            nz = mul(z, z)
            steps.append((Mult(nz, z, z),))
            z = nz
        n = n_next


def run_schedule(op, x, schedule: ParallelSchedule, executor: Optional[Executor] = None):
    """Execute a schedule; with an executor each step's products run concurrently."""
    vals: Dict[int, Any] = {0: x}
    for step in schedule.steps:
        if executor is not None and len(step) > 1:
            futures = [(m.target, executor.submit(op, vals[m.left], vals[m.right])) for m in step]
            for t, f in futures:
                vals[t] = f.result()
        else:
            for m in step:
                vals[m.target] = op(vals[m.left], vals[m.right])
    return vals[schedule.result]


# -- Brauer ------------------------------------------------------------------


def repeated_square(op, z, k: int):
    for _ in range(k):
        z = op(z, z)
    return z


def extract_powers_of_two(n: int) -> Tuple[int, int]:
    """(j, b) with n = 2^j * b and b odd, or (0, 0) for n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 0, 0
    j = (n & -n).bit_length() - 1
    return j, n >> j


def digits_base_2_k(n: int, k: int) -> List[int]:
    """Digits of n in base 2^k, least significant first."""
    _check_k(k)
    mask = (1 << k) - 1
    digits = []
    while n > 0:
        digits.append(n & mask)
        n >>= k
    return digits


def brauer_exponentiate(op, x, n: int, k: int, flip: bool = False):
    """x^n by Brauer's 2^k-ary method with duplicate squarings removed."""
    _check_exponent(n)
    _check_k(k)
    digits = digits_base_2_k(n, k)
    split = [extract_powers_of_two(d) for d in digits]

    def eop(u, v):
        return (u[0] + v[0], op(v[1], u[1]) if flip else op(u[1], v[1]))

    max_b = max(b for _, b in split)
    n_pre = (max_b + 1) >> 1
    pre = [(1, x)]
    x_squared = None
    if n_pre > 1:
        x_squared = (2, op(x, x))
        for _ in range(1, n_pre):
            pre.append(eop(pre[-1], x_squared))

    def square_no_dup(z, j):
        if n_pre > 1 and z[0] == 1 and j > 0:
            return repeated_square(eop, x_squared, j - 1)
        return repeated_square(eop, z, j)

    i = len(digits) - 1
    j, b = split[i]
    z = square_no_dup(pre[b >> 1], j)
    i -= 1
    while i >= 0:
        j, b = split[i]
        if b == 0:
            z = square_no_dup(z, k)
        else:
            exponent = b + z[0] * (1 << (k - j))
            if exponent <= max_b:
                z = pre[exponent >> 1]
            else:
                z = square_no_dup(z, k - j)
                z = eop(z, pre[b >> 1])
            z = repeated_square(eop, z, j)
        i -= 1
    return z[1]


def brauer_count(n: int, k: int) -> int:
    """Number of op calls made by ``brauer_exponentiate(op, x, n, k)``."""
    _check_exponent(n)
    _check_k(k)
    split = [extract_powers_of_two(d) for d in digits_base_2_k(n, k)]
    max_b = max(b for _, b in split)
    n_pre = (max_b + 1) >> 1
    count = n_pre - 1 + (1 if n_pre > 1 else 0)

    def square_no_dup(e, j):
        # returns (new exponent, ops used)
        if n_pre > 1 and e == 1 and j > 0:
            return 2 << (j - 1), j - 1
        return e << j, j

    i = len(split) - 1
    j, b = split[i]
    e, c = square_no_dup(b, j)
    count += c
    i -= 1
    while i >= 0:
        j, b = split[i]
        if b == 0:
            e, c = square_no_dup(e, k)
            count += c
        else:
            exponent = b + e * (1 << (k - j))
            if exponent <= max_b:
                e = exponent
            else:
                e, c = square_no_dup(e, k - j)
                e += b
                count += c + 1
            e <<= j
            count += j
        i -= 1
    return count


# -- Thurber -----------------------------------------------------------------


@dataclass(frozen=True)
class ThurberWindow:
    width: int
    value: int
    gap: int

    def __iter__(self):
        return iter((self.width, self.value, self.gap))


def thurber_windows(n: int, k: int) -> List[ThurberWindow]:
    """Split the bits of n into odd windows of width <= k, most significant first.

    Each window records its width, its value and the number of zero bits
    that follow it.
    """
    _check_exponent(n)
    _check_k(k)
    windows = []
    i = n.bit_length() - 1
    while i >= 0:
        start = max(i - k + 1, 0)
        while not (n >> start) & 1:
            start += 1
        width = i - start + 1
        value = (n >> start) & ((1 << width) - 1)
        i -= width
        gap = 0
        while i >= 0 and not (n >> i) & 1:
            i -= 1
            gap += 1
        windows.append(ThurberWindow(width, value, gap))
    return windows


def thurber_exponentiate(op, x, n: int, k: int, flip: bool = False):
    """x^n by Thurber's sliding-window method."""
    windows = thurber_windows(n, k)
    max_value = max(w.value for w in windows)
    n_pre = (max_value + 1) >> 1
    pre = [x]
    x_squared = None
    if n_pre > 1:
        x_squared = op(x, x)
        for _ in range(1, n_pre):
            pre.append(op(x_squared, pre[-1]) if flip else op(pre[-1], x_squared))
    w0 = windows[0]
    if w0.value == 1 and w0.gap > 0 and n_pre > 1:
        z = repeated_square(op, x_squared, w0.gap - 1)
    else:
        z = repeated_square(op, pre[w0.value >> 1], w0.gap)
    for w in windows[1:]:
        z = repeated_square(op, z, w.width)
        p = pre[w.value >> 1]
        z = op(p, z) if flip else op(z, p)
        z = repeated_square(op, z, w.gap)
    return z


def thurber_count(n: int, k: int) -> int:
    """Number of op calls made by ``thurber_exponentiate(op, x, n, k)``."""
    windows = thurber_windows(n, k)
    max_value = max(w.value for w in windows)
    n_pre = (max_value + 1) >> 1
    count = n_pre - 1 + (1 if n_pre > 1 else 0)
    w0 = windows[0]
    count += w0.gap - (1 if (w0.value == 1 and w0.gap > 0 and n_pre > 1) else 0)
    for w in windows[1:]:
        count += w.width + 1 + w.gap
    return count


def _thurber_k_max(n: int) -> int:
    if n < 15:
        return 1
    if n < 23:
        return 2
    if n < 151:
        return 3
    if n < 9413609:
        return 4
    if n < 10_000_000_000:
        return 5
    return n.bit_length()


def thurber_best_k(n: int) -> int:
    """Smallest k minimising ``thurber_count``, searched up to staged bounds."""
    _check_exponent(n)
    k_best, count_best = 1, thurber_count(n, 1)
    for k in range(2, _thurber_k_max(n) + 1):
        c = thurber_count(n, k)
        if c < count_best:
            k_best, count_best = k, c
    return k_best


def brauer_best_k(n: int) -> int:
    """Smallest k in 1..bit_length(n) minimising ``brauer_count``."""
    _check_exponent(n)
    k_best, count_best = 1, brauer_count(n, 1)
    for k in range(2, n.bit_length() + 1):
        c = brauer_count(n, k)
        if c < count_best:
            k_best, count_best = k, c
    return k_best


# -- formal addition chains -------------------------------------------------


@dataclass(frozen=True)
class FormalAdditionChain:
    """Values e_0..e_l with e_0 = 1 and e_k = e_{i_k} + e_{j_k}."""

    values: Tuple[int, ...]
    index_pairs: Tuple[Tuple[int, int], ...]

    def length(self) -> int:
        return len(self.index_pairs)

    @property
    def target(self) -> int:
        return self.values[-1]

    def validate(self) -> None:
        if not self.values or self.values[0] != 1:
            raise InvalidChain("a chain must start at 1")
        if len(self.values) != len(self.index_pairs) + 1:
            raise InvalidChain("need exactly one index pair per value after the first")
        for k, (i, j) in enumerate(self.index_pairs, start=1):
            if not (0 <= i < k and 0 <= j < k):
                raise InvalidChain(f"step {k} refers to a later entry ({i}, {j})")
            if self.values[k] != self.values[i] + self.values[j]:
                raise InvalidChain(f"step {k}: {self.values[k]} != {self.values[i]} + {self.values[j]}")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except InvalidChain:
            return False
        return True


class _ChainRecorder:
    """A symbolic op over node numbers that records index pairs."""

    def __init__(self):
        self.values = [1]
        self.pairs: List[Tuple[int, int]] = []

    def __call__(self, i, j):
        self.pairs.append((i, j))
        self.values.append(self.values[i] + self.values[j])
        return len(self.values) - 1


def record_chain(method: str, n: int, k: Optional[int] = None, flip: bool = False) -> FormalAdditionChain:
    """Run an exponentiation method symbolically and return its chain."""
    rec = _ChainRecorder()
    exponentiator(method, k=k, flip=flip)(rec, 0, n)
    chain = FormalAdditionChain(tuple(rec.values), tuple(rec.pairs))
    chain.validate()
    return chain


def execute_chain(op, x, chain: FormalAdditionChain):
    """q_0 = x, q_k = q_{i_k} * q_{j_k}; returns q_l."""
    chain.validate()
    q = [x]
    for i, j in chain.index_pairs:
        q.append(op(q[i], q[j]))
    return q[-1]


def optimal_chain_search(n: int) -> FormalAdditionChain:
    """A shortest addition chain for n <= 128 by iterative deepening.

    The chain is kept strictly increasing and each new entry is a sum of
    two earlier ones; a branch is cut when doubling the last entry for the
    remaining steps cannot reach n.
    """
    _check_exponent(n)
    if n > 128:
        raise ValueError("optimal_chain_search is limited to n <= 128")
    if n == 1:
        return FormalAdditionChain((1,), ())
    lower = math.ceil(math.log2(n))

    def dfs(vals, pairs, depth):
        last = vals[-1]
        if last == n:
            return True
        if len(pairs) == depth or last << (depth - len(pairs)) < n:
            return False
        tried = set()
        m = len(vals)
        for i in range(m - 1, -1, -1):
            for j in range(i, -1, -1):
                s = vals[i] + vals[j]
                if s <= last or s > n or s in tried:
                    continue
                tried.add(s)
                vals.append(s)
                pairs.append((i, j))
                if dfs(vals, pairs, depth):
                    return True
                vals.pop()
                pairs.pop()
        return False

    depth = lower
    while True:
        vals, pairs = [1], []
        if dfs(vals, pairs, depth):
            return FormalAdditionChain(tuple(vals), tuple(pairs))
        depth += 1


# -- multiple exponents --------------------------------------------------------


def multi_exponentiate_power2_family(op, x, n1: int, j: int, method: str = "binary",
                                     k: Optional[int] = None, flip: bool = False):
    """(x^n1, x^(2^j n1)): one power by ``method`` then j squarings."""
    if j < 0:
        raise ValueError("j must be >= 0")
    base = exponentiator(method, k=k, flip=flip)(op, x, n1)
    return base, repeated_square(op, base, j)


def multi_exponentiate(op, x, exponents: Sequence[int], method: str = "binary",
                       k: Optional[int] = None, flip: bool = False) -> List:
    """Powers of x for several exponents, sharing work where it is cheap.

    If every exponent is a power-of-two multiple of the smallest, the
    smallest is computed once and the rest by successive squaring.
    Otherwise each distinct power is computed independently.
    """
    exps = list(exponents)
    for e in exps:
        _check_exponent(e)
    f = exponentiator(method, k=k, flip=flip)
    m = min(exps)
    shifts = [_power2_shift(e, m) for e in exps]
    if all(s is not None for s in shifts):
        powers = [f(op, x, m)]
        for _ in range(max(shifts)):
            powers.append(op(powers[-1], powers[-1]))
        return [powers[s] for s in shifts]
    cache: Dict[int, Any] = {}
    for e in exps:
        if e not in cache:
            cache[e] = f(op, x, e)
    return [cache[e] for e in exps]


def _power2_shift(e: int, m: int) -> Optional[int]:
    q, r = divmod(e, m)
    if r or q & (q - 1):
        return None
    return q.bit_length() - 1


# -- factory -------------------------------------------------------------------

METHODS = ("binary", "binary-down", "parallel", "brauer", "thurber", "optimal")


def exponentiator(method: str = "binary", k: Optional[int] = None, flip: bool = False) -> Callable:
    """``f(op, x, n)`` for a named method.

    ``brauer`` and ``thurber`` use the given k, or the best k for each n
    when k is None. ``optimal`` replays a shortest chain (n <= 128).
    """
    if method == "binary":
        return lambda op, x, n: binary_exponentiate(op, x, n, flip)
    if method == "binary-down":
        v = "down-left" if flip else "down-right"
        return lambda op, x, n: binary_exponentiate(op, x, n, variant=v)
    if method == "parallel":
        return lambda op, x, n: parallel_binary_exponentiate(op, x, n, flip)[0]
    if method == "brauer":
        return lambda op, x, n: brauer_exponentiate(op, x, n, k or brauer_best_k(n), flip)
    if method == "thurber":
        return lambda op, x, n: thurber_exponentiate(op, x, n, k or thurber_best_k(n), flip)
    if method == "optimal":
        def run(op, x, n):
            f = (lambda a, b: op(b, a)) if flip else op
            return execute_chain(f, x, optimal_chain_search(n))
        return run
    raise ValueError(f"unknown exponentiation method {method!r}; expected one of {METHODS}")


def method_count(method: str, n: int, k: Optional[int] = None) -> int:
    """Op calls used by a method, without running it."""
    if method in ("binary", "binary-down", "parallel"):
        return binary_count(n)
    if method == "brauer":
        return brauer_count(n, k or brauer_best_k(n))
    if method == "thurber":
        return thurber_count(n, k or thurber_best_k(n))
    if method == "optimal":
        return optimal_chain_search(n).length()
    raise ValueError(f"unknown exponentiation method {method!r}")


__all__ = [
    "InvalidChain", "binary_exponentiate", "binary_count", "BINARY_VARIANTS",
    "parallel_binary_exponentiate", "ParallelSchedule", "Mult", "run_schedule",
    "repeated_square", "extract_powers_of_two", "digits_base_2_k",
    "brauer_exponentiate", "brauer_count", "brauer_best_k", "ThurberWindow",
    "thurber_windows", "thurber_exponentiate", "thurber_count", "thurber_best_k",
    "FormalAdditionChain", "record_chain", "execute_chain", "optimal_chain_search",
    "multi_exponentiate_power2_family", "multi_exponentiate", "exponentiator",
    "method_count", "METHODS",
]
