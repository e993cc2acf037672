"""Exhaustive census of left-stable sets on [0, n].

Membership of 1, 2, ..., n-1 is decided in ascending order. Including an
element immediately adds every sum it forces below n; a forced element that
was already excluded kills the branch. The exclude branch is explored first,
so sets come out in lexicographic order of the membership vector
``(1 ∈ A, 2 ∈ A, ..., n-1 ∈ A)``.

The search tree is cut at a fixed depth into independent subtrees. Running
them in a process pool and concatenating the results in subtree order gives
the same stream as the serial search.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .errors import InconsistencyError, PreconditionError
from .intset import IntSet, format_set_literal, gcd_star_bits, get_capacity, prefix_count
from .report import FAIL, PASS, Report
from .stability import h_disc, half_plus_one, is_left_stable, satisfies_theorem_hypotheses

DEFAULT_SPLIT_DEPTH = 12
DEFAULT_MAX_N = 28

CSV_HEADER = ("n", "x", "bound", "achieved_max", "num_extremal", "total_enumerated")

REMARK_N = 48
REMARK_X = 13
REMARK_A = "0,11-13,22-26,33-48"
REMARK_B = "0,10-12,20-24,30-36,40-48"


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class CensusResult:
    n: int
    x: int
    bound: int
    achieved_max: int
    extremal_sets: list[IntSet] = field(default_factory=list)
    total_enumerated: int = 0

    @property
    def sharp(self) -> bool:
        return self.achieved_max == self.bound

    @property
    def exceeds_bound(self) -> bool:
        return self.achieved_max > self.bound

    def csv_row(self) -> tuple[int, ...]:
        return (self.n, self.x, self.bound, self.achieved_max,
                len(self.extremal_sets), self.total_enumerated)


def _close(bits: int, new: int, window: int) -> int:
    """Smallest superset of ``bits | new`` closed under sums within ``window``.

    ``bits`` must already be closed; only sums involving fresh elements are
    generated.
    """
    fresh = new & ~bits
    bits |= fresh
    while fresh:
        added = 0
        f = fresh
        while f:
            low = f & -f
            added |= (bits << (low.bit_length() - 1)) & window
            f ^= low
        fresh = added & ~bits
        bits |= fresh
    return bits


@dataclass(frozen=True)
class _Task:
    n: int
    start: int
    included: int
    excluded: int
    cardinality: int | None


def _search(task: _Task, deadline: float | None = None) -> list[int]:
    n, target = task.n, task.cardinality
    window = (1 << (n + 1)) - 1
    out: list[int] = []

    def rec(i: int, inc: int, exc: int) -> None:
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(f"census budget exhausted at n={n}")
        size = inc.bit_count()
        if target is not None:
            if size > target:
                return
            undecided = (((1 << n) - 1) >> i << i) & ~(inc | exc) if i < n else 0
            if size + undecided.bit_count() < target:
                return
        if i >= n:
            if target is None or size == target:
                out.append(inc)
            return
        if (inc >> i) & 1:
            rec(i + 1, inc, exc)
            return
        rec(i + 1, inc, exc | (1 << i))
        closed = _close(inc, 1 << i, window)
        if not closed & exc:
            rec(i + 1, closed, exc)

    rec(task.start, task.included, task.excluded)
    return out


def _frontier(n: int, depth: int, cardinality: int | None) -> list[_Task]:
    """Expand the first ``depth`` decisions breadth-first in lexicographic order."""
    window = (1 << (n + 1)) - 1
    level = [(1 | (1 << n), 0)]
    stop = min(1 + depth, n)
    for i in range(1, stop):
        nxt = []
        for inc, exc in level:
            if (inc >> i) & 1:
                nxt.append((inc, exc))
                continue
            nxt.append((inc, exc | (1 << i)))
            closed = _close(inc, 1 << i, window)
            if not closed & exc:
                nxt.append((closed, exc))
        if cardinality is not None:
            nxt = [(inc, exc) for inc, exc in nxt if inc.bit_count() <= cardinality]
        level = nxt
    return [_Task(n, stop, inc, exc, cardinality) for inc, exc in level]


def _run_task(args: tuple[_Task, float | None]) -> list[int]:
    return _search(*args)


def enumerate_left_stable(
    n: int,
    require_cardinality: int | None = None,
    require_gcd1: bool = False,
    *,
    jobs: int = 1,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
    budget: float | None = None,
) -> Iterator[IntSet]:
    """Yield every left-stable ``A ⊆ [0, n]`` with ``0, n ∈ A``.

    Output order is lexicographic in the membership vector and does not depend
    on ``jobs``. ``budget`` is a wall-clock limit in seconds.
    """
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if n > get_capacity():
        raise PreconditionError(f"n={n} beyond configured capacity {get_capacity()}")
    deadline = None if budget is None else time.monotonic() + budget
    tasks = _frontier(n, split_depth, require_cardinality)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_run_task, [(t, deadline) for t in tasks], chunksize=8)
            batches = list(chunks)
    else:
        batches = (_search(t, deadline) for t in tasks)
    for batch in batches:
        for bits in batch:
            if require_gcd1 and gcd_star_bits(bits) != 1:
                continue
            yield IntSet.from_bits(bits)


def theorem_class(n: int, **kwargs) -> list[IntSet]:
    """All sets meeting the discrete theorem's hypotheses with diameter ``n``."""
    return list(enumerate_left_stable(n, half_plus_one(n), True, **kwargs))


def census(n: int, *, strict: bool = False, **kwargs) -> list[CensusResult]:
    """Census rows for every x in [2, n] from one enumeration of the class.

    With ``strict`` a row whose maximum exceeds the bound raises
    :class:`InconsistencyError`.
    """
    members = theorem_class(n, **kwargs)
    rows = []
    for x in range(2, n + 1):
        bound = h_disc(n, x).value + 1
        counts = [prefix_count(a, x) for a in members]
        best = max(counts, default=0)
        extremal = [a for a, c in zip(members, counts) if c == best] if members else []
        row = CensusResult(n, x, bound, best, extremal, len(members))
        if strict and row.exceeds_bound:
            raise InconsistencyError(
                f"census exceeds the bound at n={n}, x={x}", row=row
            )
        rows.append(row)
    return rows


def sharpness_census(n: int, x: int, *, strict: bool = True, **kwargs) -> CensusResult:
    if not 2 <= x <= n:
        raise PreconditionError(f"x out of range: need 2 <= x <= {n}")
    members = theorem_class(n, **kwargs)
    bound = h_disc(n, x).value + 1
    counts = [prefix_count(a, x) for a in members]
    best = max(counts, default=0)
    row = CensusResult(n, x, bound, best,
                       [a for a, c in zip(members, counts) if c == best], len(members))
    if strict and row.exceeds_bound:
        raise InconsistencyError(f"census exceeds the bound at n={n}, x={x}", row=row)
    return row


def census_csv(rows: list[CensusResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_row())
    return buf.getvalue()


def dump_extremal_sets(rows: list[CensusResult]) -> str:
    """One set literal per line, grouped under ``# n=.. x=..`` headers."""
    lines = []
    for row in rows:
        lines.append(f"# n={row.n} x={row.x}")
        lines.extend(format_set_literal(a) for a in row.extremal_sets)
    return "\n".join(lines) + "\n"


def verify_remark_sets() -> Report:
    """Check the two N=48 sets that show the extremal set is not unique."""
    from .intset import parse_set_literal

    fields: dict[str, object] = {}
    ok = True
    sets = {"A": parse_set_literal(REMARK_A), "B": parse_set_literal(REMARK_B)}
    bound = h_disc(REMARK_N, REMARK_X).value + 1
    for name, s in sets.items():
        checks = {
            "STABLE": s.min() == 0 and is_left_stable(s).stable,
            "MIN_MAX": s.min() == 0 and s.max() == REMARK_N,
            "GCD1": gcd_star_bits(s.bits) == 1,
            "SIZE": len(s) == half_plus_one(REMARK_N),
            "PREFIX13": prefix_count(s, REMARK_X) == bound,
        }
        for key, val in checks.items():
            fields[f"{name}_{key}"] = val
            ok &= val
        fields[f"{name}_IN_CLASS"] = satisfies_theorem_hypotheses(s)
    fields["DISTINCT"] = sets["A"] != sets["B"]
    ok &= sets["A"] != sets["B"]
    return Report(PASS if ok else FAIL, fields)
