"""Command-line front end: run | counts | expo.

Exit codes: 0 ok, 2 input or usage error, 3 algorithm/operator mismatch,
4 count formula mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from . import gallery
from .algebra import UNDEF
from .exponentiation import (METHODS, brauer_best_k, brauer_count, exponentiator, method_count,
                             thurber_best_k, thurber_count)
from .opcount import (DEW_VARIANTS, TWO_STACKS_VARIANTS, count_dew, count_two_stacks, instrument)
from .sequential import (ASSOCIATIVE_ALGORITHMS, difference_of_prefix_sums, meta_windowed_recurrence,
                         naive_window, naive_windowed_recurrence, nonassociative_window_product,
                         slick_deque_window, subtract_on_evict, window_algorithm)
from . import vector

EXIT_PARSE = 2
EXIT_MISMATCH = 3
EXIT_COUNTS = 4

SEED_ENV = "SLIDEWIN_SEED"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def seed_from_env(default: int = 0) -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise CliError(EXIT_PARSE, f"{SEED_ENV} must be an integer, got {raw!r}") from None


# -- value parsing and formatting ------------------------------------------------


def parse_number(tok: str):
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def parse_token(tok: str, kind: str):
    tok = tok.strip()
    if tok.upper() == "NA":
        return UNDEF
    if kind == "num":
        return parse_number(tok)
    if kind == "str":
        return tok
    if kind == "bool":
        low = tok.lower()
        if low in ("1", "true", "t", "yes"):
            return True
        if low in ("0", "false", "f", "no"):
            return False
        raise ValueError(f"not a boolean: {tok!r}")
    if kind == "set":
        if tok in ("", "{}"):
            return frozenset()
        return frozenset(parse_number(t) for t in tok.split("|"))
    raise ValueError(f"unknown column type {kind!r}")


def parse_items(lines: Iterable[str], entry: gallery.GalleryEntry) -> List:
    """One item per line; paired entries take comma-separated columns.

    Blank lines and lines starting with '#' are skipped.
    """
    items = []
    for lineno, line in enumerate(lines, start=1):
        text = line.rstrip("\r\n")
        if not text.strip() or text.lstrip().startswith("#"):
            continue
        cols = next(csv.reader([text]))
        if len(cols) != entry.columns:
            raise CliError(EXIT_PARSE, f"line {lineno}: expected {entry.columns} column(s), got {len(cols)}")
        try:
            vals = [parse_token(c, k) for c, k in zip(cols, entry.column_types)]
        except ValueError as exc:
            raise CliError(EXIT_PARSE, f"line {lineno}: {exc}") from None
        items.append(vals[0] if entry.columns == 1 else tuple(vals))
    return items


def format_scalar(v) -> str:
    if v is UNDEF:
        return "NA"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, frozenset):
        return "|".join(format_scalar(x) for x in sorted(v))
    return str(v)


def format_row(v) -> List[str]:
    if isinstance(v, tuple):
        out = []
        for x in v:
            out.extend(format_row(x))
        return out
    return [format_scalar(v)]


def to_json(v):
    if v is UNDEF:
        return None
    if isinstance(v, tuple):
        return [to_json(x) for x in v]
    if isinstance(v, frozenset):
        return sorted(to_json(x) for x in v)
    return v


# -- run ---------------------------------------------------------------------------

SEQUENTIAL_ALGOS = tuple(ASSOCIATIVE_ALGORITHMS)
SPECIAL_ALGOS = ("slick", "soe", "dps")


def algorithm_names() -> List[str]:
    return list(SEQUENTIAL_ALGOS) + list(SPECIAL_ALGOS) + [f"vector:{m}" for m in METHODS]


def check_compatible(algo: str, entry: gallery.GalleryEntry) -> None:
    """Raise CliError(3) when ``algo`` cannot run ``entry``."""
    if algo in SEQUENTIAL_ALGOS:
        return
    if algo.startswith("vector:"):
        if algo[len("vector:"):] not in METHODS:
            raise CliError(EXIT_PARSE, f"unknown exponentiation method in {algo!r}")
        return
    if algo == "slick":
        if entry.kind != "op" or not entry.selective:
            raise CliError(EXIT_MISMATCH, f"slick needs a transitive selection operator; {entry.name} is not one")
        return
    if algo in ("soe", "dps"):
        if entry.kind != "op" or entry.inverse is None:
            raise CliError(EXIT_MISMATCH, f"{algo} needs an invertible operator; {entry.name} has no inverse")
        return
    raise CliError(EXIT_PARSE, f"unknown algorithm {algo!r}")


def run_algorithm(algo: str, entry: gallery.GalleryEntry, items: Sequence, n: int,
                  k: Optional[int] = None, window_product: bool = False) -> List:
    """Outputs y_1..y_N for raw items, projected for display."""
    check_compatible(algo, entry)
    if n < 1:
        raise CliError(EXIT_PARSE, "--n must be >= 1")
    data = entry.prepared(items)
    if window_product:
        if entry.name not in gallery.NONASSOC_TABLES:
            raise CliError(EXIT_MISMATCH, "--window-product needs a finite table operator")
        if not (algo == "naive" or algo in ASSOCIATIVE_ALGORITHMS):
            raise CliError(EXIT_MISMATCH, f"{algo} cannot drive the nonassociative window product")
        op = gallery.nonassoc_op(entry.name)
        if algo == "naive":
            return naive_window(op, data, n)
        return nonassociative_window_product(op, gallery.NONASSOC_CARRIER, data, n, window_algorithm(algo))

    if algo.startswith("vector:"):
        f = exponentiator(algo[len("vector:"):], k=k)
        if not data:
            return []
        if entry.kind == "op":
            ctx = vector.FixedLenScheme(entry.op, entry.identity).context()
            return list(vector.window_compose(ctx, data, n, f))
        ctx = vector.rep_action_context(entry.rep, entry.x0, entry.identity)
        out = vector.window_apply(ctx, n, data, [entry.x0] * len(data), f)
        return [entry.output(y) for y in out]

    if entry.kind == "op":
        if algo == "slick":
            return slick_deque_window(entry.op, data, n)
        if algo == "soe":
            return subtract_on_evict(entry.op, entry.inverse, data, n)
        if algo == "dps":
            return difference_of_prefix_sums(entry.op, entry.inverse, data, n)
        return window_algorithm(algo)(entry.op, data, n)

    if algo == "naive":
        out = naive_windowed_recurrence(entry.action, data, entry.x0, n)
    else:
        out = meta_windowed_recurrence(entry.rep, data, entry.x0, n, window_algorithm(algo))
    return [entry.output(y) for y in out]


def _read_input(path: Optional[str]) -> List[str]:
    if path in (None, "-"):
        return sys.stdin.readlines()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.readlines()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def _write_output(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def render_values(values: Sequence, fmt: str, key: str = "y") -> str:
    if fmt == "json":
        return json.dumps({key: [to_json(v) for v in values]}) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for v in values:
        w.writerow(format_row(v))
    return buf.getvalue()


def cmd_run(args) -> int:
    try:
        entry = gallery.get(args.op)
    except KeyError as exc:
        raise CliError(EXIT_PARSE, exc.args[0]) from None
    check_compatible(args.algo, entry)
    if args.random is not None:
        rng = random.Random(seed_from_env())
        items = gallery.sample(entry, rng, args.random)
    else:
        items = parse_items(_read_input(args.input), entry)
    out = run_algorithm(args.algo, entry, items, args.n, args.k, args.window_product)
    _write_output(args.output, render_values(out, args.format))
    return 0


# -- counts ------------------------------------------------------------------------


def parse_range(text: str, n: Optional[int] = None) -> range:
    """'a:b' (inclusive) or a single value; a bound may be written 'Kn' for K*n."""

    def bound(tok):
        tok = tok.strip()
        if tok.endswith("n"):
            if n is None:
                raise CliError(EXIT_PARSE, f"bound {tok!r} needs a window length")
            mult = tok[:-1] or "1"
            return int(mult) * n
        return int(tok)

    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return range(bound(lo), bound(hi) + 1)
        v = bound(text)
        return range(v, v + 1)
    except ValueError:
        raise CliError(EXIT_PARSE, f"bad range {text!r}") from None


COUNT_ALGOS = tuple(f"twostacks:{v}" for v in TWO_STACKS_VARIANTS) + tuple(
    f"dew{v}{s}" for v in DEW_VARIANTS for s in ("", ":basic"))


def formula_count(algo: str, n: int, N: int) -> int:
    if algo.startswith("twostacks:"):
        return count_two_stacks(algo.split(":", 1)[1], n, N)
    return count_dew(int(algo[3]), n, N)


def count_cell(algo: str, n: int, N: int, with_trace: bool = False) -> Dict[str, Any]:
    """Instrumented count of one run against its closed form."""
    op = instrument(lambda x, y: x + y)
    window_algorithm(algo)(op, list(range(1, N + 1)), n)
    incs = op.increments()
    formula = formula_count(algo, n, N)
    cell = {"algo": algo, "n": n, "N": N, "instrumented": op.total, "formula": formula,
            "match": op.total == formula, "max_increment": max(incs) if incs else 0}
    if with_trace:
        cell["increments"] = incs
    return cell


def count_cells(algos: Sequence[str], n_range: str, N_range: str, workers: int = 1) -> List[Dict]:
    keys = []
    for algo in algos:
        if algo not in COUNT_ALGOS:
            raise CliError(EXIT_MISMATCH, f"no count formula for {algo!r}; choose from {', '.join(COUNT_ALGOS)}")
        for n in parse_range(n_range):
            if n < 1:
                raise CliError(EXIT_PARSE, "--n must be >= 1")
            for N in parse_range(N_range, n):
                if N >= 1:
                    keys.append((algo, n, N))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            return list(ex.map(lambda key: count_cell(*key), keys))
    return [count_cell(*key) for key in keys]


def cmd_counts(args) -> int:
    algos = [a.strip() for a in args.algo.split(",") if a.strip()]
    if args.trace:
        n_r, N_r = parse_range(args.n), None
        if len(algos) != 1 or len(n_r) != 1:
            raise CliError(EXIT_PARSE, "--trace needs a single algorithm, n and N")
        N_r = parse_range(args.N, n_r[0])
        if len(N_r) != 1:
            raise CliError(EXIT_PARSE, "--trace needs a single algorithm, n and N")
        cell = count_cell(algos[0], n_r[0], N_r[0], with_trace=True)
        _write_output(args.output, "".join(f"{v}\n" for v in cell["increments"]))
        return 0 if cell["match"] else EXIT_COUNTS
    cells = count_cells(algos, args.n, args.N, args.workers)
    if args.format == "json":
        text = json.dumps({"cells": cells}, indent=1) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, ["algo", "n", "N", "instrumented", "formula", "match", "max_increment"],
                           lineterminator="\n")
        w.writeheader()
        w.writerows(cells)
        text = buf.getvalue()
    _write_output(args.output, text)
    return 0 if all(c["match"] for c in cells) else EXIT_COUNTS


# -- expo ------------------------------------------------------------------------------

K_METHODS = ("brauer", "thurber")
_COUNTERS = {"brauer": brauer_count, "thurber": thurber_count}
_BEST = {"brauer": brauer_best_k, "thurber": thurber_best_k}


def expo_rows(ns: Iterable[int], methods: Sequence[str], ks: Sequence[int]) -> List[Dict]:
    rows = []
    for n in ns:
        for m in methods:
            if m in K_METHODS:
                best = _BEST[m](n)
                for k in ks:
                    rows.append({"n": n, "method": m, "k": k, "count": _COUNTERS[m](n, k),
                                 "best_k": int(k == best)})
            else:
                rows.append({"n": n, "method": m, "k": "", "count": method_count(m, n), "best_k": ""})
    return rows


def best_k_summary(ns: Sequence[int], method: str) -> Tuple[Dict[int, int], Dict[int, float]]:
    """(first n where each k is best, percentage of n with each best k)."""
    best = _BEST[method]
    first: Dict[int, int] = {}
    tally: Dict[int, int] = {}
    for n in ns:
        k = best(n)
        first.setdefault(k, n)
        tally[k] = tally.get(k, 0) + 1
    total = len(ns)
    pct = {k: round(100.0 * c / total, 1) for k, c in sorted(tally.items())}
    return dict(sorted(first.items())), pct


def cmd_expo(args) -> int:
    ns = list(parse_range(args.n))
    if not ns or ns[0] < 1:
        raise CliError(EXIT_PARSE, "--n must be a range of positive integers")
    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise CliError(EXIT_PARSE, f"unknown method {m!r}")
    ks = list(parse_range(args.k)) if args.k else [1, 2, 3, 4]
    if args.summary:
        summary = []
        for m in methods:
            if m not in K_METHODS:
                continue
            first, pct = best_k_summary(ns, m)
            summary += [{"table": "first_occurrence", "method": m, "k": k, "value": v} for k, v in first.items()]
            summary += [{"table": "percentage", "method": m, "k": k, "value": v} for k, v in pct.items()]
        fields, rows = ["table", "method", "k", "value"], summary
    else:
        fields, rows = ["n", "method", "k", "count", "best_k"], expo_rows(ns, methods, ks)
    if args.format == "json":
        text = json.dumps({"rows": rows}) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    _write_output(args.output, text)
    return 0


# -- entry point ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slidewin", description="Sliding window aggregation toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a window algorithm over an input file")
    r.add_argument("--algo", required=True, help="one of: " + ", ".join(algorithm_names()))
    r.add_argument("--op", required=True, help="gallery operator or representation name")
    r.add_argument("--n", type=int, required=True, help="window length")
    r.add_argument("--k", type=int, default=None, help="window size k for brauer/thurber")
    r.add_argument("--input", default=None, help="input CSV (default stdin)")
    r.add_argument("--random", type=int, default=None, metavar="N",
                   help=f"use N random items instead of --input (seed from {SEED_ENV})")
    r.add_argument("--window-product", action="store_true",
                   help="for table operators, compute window *-products instead of the recurrence")
    r.add_argument("--output", default=None)
    r.add_argument("--format", choices=("csv", "json"), default="csv")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("counts", help="instrumented op counts against closed forms")
    c.add_argument("--algo", default=",".join(COUNT_ALGOS[:5] + ("dew1", "dew2")))
    c.add_argument("--n", default="2:32", help="range a:b")
    c.add_argument("--N", default="1:4n", help="range a:b; 'Kn' means K times n")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--trace", action="store_true", help="write the increment trace of one cell")
    c.add_argument("--output", default=None)
    c.add_argument("--format", choices=("csv", "json"), default="json")
    c.set_defaults(func=cmd_counts)

    e = sub.add_parser("expo", help="exponentiation operation counts and best-k tables")
    e.add_argument("--n", default="1:1000")
    e.add_argument("--method", default="binary,brauer,thurber")
    e.add_argument("--k", default="1:4", help="range of k for brauer/thurber")
    e.add_argument("--summary", action="store_true", help="first-occurrence and percentage tables")
    e.add_argument("--output", default=None)
    e.add_argument("--format", choices=("csv", "json"), default="csv")
    e.set_defaults(func=cmd_expo)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"slidewin: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
