"""Exact interval-union algebra and the continuous left-stability results.

Sets are finite unions of closed intervals with :class:`fractions.Fraction`
endpoints. On this class the inner Lebesgue measure is the plain sum of
lengths, so every claim below is checked with exact equality or inequality.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import EmptySetError, InconsistencyError, LiteralSyntaxError, PreconditionError
from .report import FAIL, PASS, Report

Number = Union[int, Fraction, str]


def as_rational(value: Number) -> Fraction:
    """Parse ``p/q`` strings and integers into a Fraction. Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise LiteralSyntaxError(f"expected an exact rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise LiteralSyntaxError(f"bad rational {value!r}") from exc
    raise LiteralSyntaxError(f"expected an exact rational, got {value!r}")


class IntervalUnion:
    """Finite union of disjoint closed intervals ``[a_i, b_i]`` with ``b_i < a_{i+1}``.

    Overlapping or touching inputs are merged; single points are allowed.
    """

    __slots__ = ("_iv",)

    def __init__(self, intervals: Iterable[Sequence[Number]] = ()) -> None:
        raw = []
        for pair in intervals:
            lo, hi = (as_rational(v) for v in pair)
            if hi < lo:
                raise PreconditionError(f"interval [{lo}, {hi}] has hi < lo")
            raw.append((lo, hi))
        raw.sort()
        merged: list[list[Fraction]] = []
        for lo, hi in raw:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1][1] = hi
            else:
                merged.append([lo, hi])
        self._iv = tuple((lo, hi) for lo, hi in merged)

    @property
    def intervals(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return self._iv

    def __iter__(self) -> Iterator[tuple[Fraction, Fraction]]:
        return iter(self._iv)

    def __len__(self) -> int:
        return len(self._iv)

    def __bool__(self) -> bool:
        return bool(self._iv)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntervalUnion):
            return self._iv == other._iv
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._iv)

    def __repr__(self) -> str:
        return f"IntervalUnion({format_union(self)})"

    def __or__(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self._iv + other._iv)

    @property
    def inf(self) -> Fraction:
        if not self._iv:
            raise EmptySetError("interval union")
        return self._iv[0][0]

    @property
    def sup(self) -> Fraction:
        if not self._iv:
            raise EmptySetError("interval union")
        return self._iv[-1][1]

    def contains(self, x: Number) -> bool:
        x = as_rational(x)
        return any(lo <= x <= hi for lo, hi in self._iv)

    def translate(self, t: Number) -> "IntervalUnion":
        t = as_rational(t)
        return IntervalUnion((lo + t, hi + t) for lo, hi in self._iv)

    def reflect(self, about: Number) -> "IntervalUnion":
        """Return ``about - self``."""
        c = as_rational(about)
        return IntervalUnion((c - hi, c - lo) for lo, hi in self._iv)

    def scale(self, factor: Number) -> "IntervalUnion":
        f = as_rational(factor)
        if f <= 0:
            raise PreconditionError("scale factor must be positive")
        return IntervalUnion((lo * f, hi * f) for lo, hi in self._iv)

    def to_json(self) -> str:
        return json.dumps({"intervals": [[str(lo), str(hi)] for lo, hi in self._iv]})

    @classmethod
    def from_json(cls, text: str) -> "IntervalUnion":
        try:
            data = json.loads(text)
            pairs = data["intervals"]
        except (ValueError, KeyError, TypeError) as exc:
            raise LiteralSyntaxError("expected {\"intervals\": [[\"p/q\", \"r/s\"], ...]}") from exc
        if not isinstance(pairs, list) or any(
            not isinstance(p, list) or len(p) != 2 for p in pairs
        ):
            raise LiteralSyntaxError("each interval must be a two-element list")
        return cls(pairs)


def format_union(u: IntervalUnion) -> str:
    return ",".join(f"[{lo},{hi}]" for lo, hi in u)


def _measure(u: IntervalUnion) -> Fraction:
    return sum((hi - lo for lo, hi in u), Fraction(0))


def measure(u: IntervalUnion) -> Fraction:
    if not u:
        raise EmptySetError("interval union")
    return _measure(u)


def diam(u: IntervalUnion) -> Fraction:
    return u.sup - u.inf


def minkowski_sum(u: IntervalUnion, v: IntervalUnion) -> IntervalUnion:
    if not u or not v:
        raise EmptySetError("both operands")
    return IntervalUnion((a + c, b + d) for a, b in u for c, d in v)


def intersect_window(u: IntervalUnion, lo: Number, hi: Number) -> IntervalUnion:
    lo, hi = as_rational(lo), as_rational(hi)
    if lo > hi:
        raise PreconditionError("window has lo > hi")
    return IntervalUnion(
        (max(a, lo), min(b, hi)) for a, b in u if a <= hi and b >= lo
    )


def prefix_measure(u: IntervalUnion, x: Fraction) -> Fraction:
    """Measure of ``u ∩ (-inf, x]``; zero for an empty intersection."""
    return sum((min(b, x) - a for a, b in u if a <= x), Fraction(0))


def _uncovered(outer: IntervalUnion, inner: IntervalUnion) -> list[tuple[Fraction, Fraction]]:
    """Closures of the pieces of ``outer`` not covered by ``inner``.

    A piece may be a single point when an isolated point of ``outer`` is
    missing from ``inner``.
    """
    pieces = []
    for a, b in outer:
        cursor, untouched = a, True
        for c, e in inner:
            if e < cursor or c > b:
                continue
            if c > cursor:
                pieces.append((cursor, c))
            cursor, untouched = max(cursor, e), False
            if cursor >= b:
                break
        if cursor < b or untouched:
            pieces.append((cursor, b))
    return pieces


@dataclass(frozen=True)
class ContStabilityReport:
    stable: bool
    witness: tuple[Fraction, Fraction] | None = None


def is_left_stable_cont(u: IntervalUnion) -> ContStabilityReport:
    """Exact test of ``(u + u) ∩ [0, diam u] = u``.

    Since ``0 ∈ u`` the left side always contains ``u``; on failure the witness
    is the closure of the first piece of the left side missing from ``u``.
    """
    if not u:
        raise EmptySetError("interval union")
    if u.inf != 0:
        raise PreconditionError("not anchored at 0: inf must be 0")
    window = intersect_window(minkowski_sum(u, u), 0, u.sup)
    if window == u:
        return ContStabilityReport(True)
    extra = _uncovered(window, u)
    return ContStabilityReport(False, extra[0] if extra else None)


def h_branch(x: Number, d: Number, k: int) -> Fraction:
    """Affine piece ``(2x - d/k) / (k + 1)`` of the continuous bound."""
    x, d = as_rational(x), as_rational(d)
    return (2 * x - d / k) / (k + 1)


def h_cont_k(x: Fraction, d: Fraction) -> int:
    """The k >= 2 with x/d in (1/k, 1/(k-1)]."""
    return int(d // x) + 1


def h_cont(x: Number, d: Number) -> Fraction:
    """Continuous bound ``d * h(x/d)`` for ``0 < x <= d``."""
    x, d = as_rational(x), as_rational(d)
    if d <= 0:
        raise PreconditionError("d must be positive")
    if not 0 < x <= d:
        raise PreconditionError(f"x out of range: need 0 < x <= d, got x={x}, d={d}")
    return h_branch(x, d, h_cont_k(x, d))


def _h_scaled(x: Fraction, d: Fraction) -> Fraction:
    """``d * h(x/d)`` extended by h(0) = 0, for envelope evaluation."""
    if x <= 0:
        return Fraction(0)
    return h_cont(min(x, d), d)


def lemma_cont_bound(u: IntervalUnion, x: Number, k: int) -> Fraction:
    """Right-hand side of the continuous prefix-measure lemma.

    ``2/(k+1) * (x - (d - λ(A))/k)`` when ``kx > d``, otherwise
    ``2/(k(k+1)) * λ(A_{kx})``.
    """
    x = as_rational(x)
    report = is_left_stable_cont(u)
    if not report.stable:
        raise PreconditionError("lemma hypothesis violated: set is not left-stable")
    if not u.contains(x):
        raise PreconditionError(f"lemma hypothesis violated: x={x} is not in the set")
    if k < 2:
        raise PreconditionError("lemma hypothesis violated: k must be at least 2")
    d = u.sup
    lam = _measure(u)
    lo = (k - 1) * x
    tail = _measure(intersect_window(u, lo, d)) if lo <= d else Fraction(0)
    if not tail < d - lo:
        raise PreconditionError(
            f"lemma hypothesis violated: λ(A ∩ [{lo}, {d}]) is not below {d - lo}"
        )
    if k * x > d:
        return Fraction(2, k + 1) * (x - (d - lam) / k)
    return Fraction(2, k * (k + 1)) * prefix_measure(u, k * x)


def extremal_cont_k(x: Fraction, d: Fraction) -> int:
    """The k with (k-1)x < d <= kx, i.e. x in [d/k, d/(k-1))."""
    return -int(-d // x)


def construct_extremal_cont(x: Number, d: Number) -> IntervalUnion:
    """The density-1/2 left-stable closed set with ``λ(A_x) = d h(x/d)``.

    ``∪_{i<k} [i((k-1)x/(k+1) + d/(k(k+1))), ix] ∪ [k(k-1)x/(k+1) + d/(k+1), d]``.
    All four postconditions are verified before returning.
    """
    x, d = as_rational(x), as_rational(d)
    if d <= 0:
        raise PreconditionError("d must be positive")
    if not 0 < x <= d:
        raise PreconditionError(f"x out of range: need 0 < x <= d, got x={x}, d={d}")
    k = extremal_cont_k(x, d)
    step = Fraction(k - 1, k + 1) * x + d / (k * (k + 1))
    raw = [(i * step, i * x) for i in range(k)]
    raw.append((Fraction(k * (k - 1), k + 1) * x + d / (k + 1), d))
    result = IntervalUnion(raw)

    failed = []
    if len(result) != len(raw) or any(lo > hi for lo, hi in raw):
        failed.append("disjoint")
    if _measure(result) != d / 2:
        failed.append("measure")
    if not is_left_stable_cont(result).stable:
        failed.append("stability")
    if prefix_measure(result, x) != h_cont(x, d):
        failed.append("prefix_measure")
    if failed:
        raise InconsistencyError(
            f"continuous construction failed {', '.join(failed)} at x={x}, d={d}",
            x=x, d=d, k=k, failed=tuple(failed),
        )
    return result


@dataclass(frozen=True)
class RuzsaReport:
    ratio: Fraction
    K: int
    sum_measure: Fraction
    branch1_holds: bool
    branch2_holds: bool

    @property
    def holds(self) -> bool:
        return self.branch1_holds or self.branch2_holds


def ruzsa_k(ratio: Fraction) -> int:
    """The K with K(K-1)/2 <= ratio < K(K+1)/2."""
    if ratio <= 0:
        raise PreconditionError("ratio must be positive")
    k = 1
    while not ratio < Fraction(k * (k + 1), 2):
        k += 1
    return k


def ruzsa_check(a: IntervalUnion, b: IntervalUnion) -> RuzsaReport:
    """Evaluate both alternatives of Ruzsa's inequality; raise if neither holds."""
    if not a or not b:
        raise EmptySetError("both operands")
    la, lb = _measure(a), _measure(b)
    if la == 0 or lb == 0:
        raise PreconditionError("both sets need positive measure")
    ratio = la / lb
    k = ruzsa_k(ratio)
    lab = _measure(minkowski_sum(a, b))
    report = RuzsaReport(
        ratio=ratio,
        K=k,
        sum_measure=lab,
        branch1_holds=lab >= la + diam(b),
        branch2_holds=lab >= (k + 1) * (la / k + lb / 2),
    )
    if not report.holds:
        raise InconsistencyError("Ruzsa's inequality fails", a=a, b=b, report=report)
    return report


def random_union(
    rng: random.Random, max_intervals: int = 6, max_denominator: int = 48, span: int = 4
) -> IntervalUnion:
    """A random union of at most ``max_intervals`` closed intervals in ``[0, span]``.

    Endpoints share one denominator drawn from ``1..max_denominator``.
    """
    count = rng.randint(1, max_intervals)
    den = rng.randint(1, max_denominator)
    pts = sorted(Fraction(rng.randint(0, span * den), den) for _ in range(2 * count))
    return IntervalUnion((pts[2 * i], pts[2 * i + 1]) for i in range(count))


def glue_critical(head: IntervalUnion, delta: Number, tail: IntervalUnion) -> IntervalUnion:
    """Build ``head ∪ [b, b + Δ] ∪ (d - tail)`` with ``b = sup head``.

    ``head`` and ``tail`` are anchored at 0; the result has diameter
    ``b + Δ + diam(tail)``.
    """
    delta = as_rational(delta)
    b = head.sup
    d = b + delta + tail.sup
    return head | IntervalUnion([(b, b + delta)]) | tail.reflect(d)


def _head_violation(u: IntervalUnion, b: Fraction) -> tuple[Fraction, Fraction, Fraction] | None:
    """First breakpoint x in [0, b] where ``λ(u ∩ [0, x]) > b h(x/b)``.

    ``u`` must have inf 0. Both sides are affine between consecutive points of
    the checked grid (interval endpoints and the kinks b/k of the envelope),
    so checking the grid decides the inequality on all of [0, b]. Below the
    first interval of positive length the prefix measure is 0 and the check is
    trivial; when that interval starts at 0 the prefix grows with slope 1 while
    the envelope stays strictly below x, so its right end (capped at b) fails.
    Returns ``(x, prefix measure, envelope)`` or None.
    """
    if b <= 0:
        return None
    fat = [(lo, hi) for lo, hi in u if hi > lo and lo < b]
    if not fat:
        return None
    start = fat[0][0]
    if start == 0:
        grid = {min(fat[0][1], b)}
    else:
        grid = {start, b}
        grid.update(x for lo, hi in u for x in (lo, hi) if start <= x <= b)
        k = 1
        while b / k >= start:
            grid.add(b / k)
            k += 1
    for x in sorted(grid):
        g = prefix_measure(u, x)
        env = _h_scaled(x, b)
        if g > env:
            return x, g, env
    return None


def envelope_check(a: IntervalUnion, b: Number) -> Report:
    """Check the three-piece envelope for one split point ``b`` (no criticality gate).

    On ``A - inf A`` with ``Δ = 2λ(A) - diam(A)`` and ``c = d - Δ - b``:
    ``g(x) <= b h(x/b)`` on [0, b]; ``[b, b+Δ] ⊆ A`` with ``g(b) = b/2``; and
    ``g(x) >= λ(A) - c h((d-x)/c)`` on [b+Δ, d].
    """
    if not a:
        raise EmptySetError("interval union")
    b = as_rational(b)
    u = a.translate(-a.inf)
    d = u.sup
    lam = _measure(u)
    delta = 2 * lam - d
    c = d - delta - b
    fields: dict[str, object] = {
        "DIAM": d, "MEASURE": lam, "DELTA": delta, "B": b, "TAIL_DIAM": c,
    }
    if b < 0 or c < 0:
        fields["BREAKPOINT"] = b
        fields["REASON"] = "split point outside [0, d - Δ]"
        return Report(FAIL, fields)
    in_run = any(lo <= b and b + delta <= hi for lo, hi in u)
    if not in_run or prefix_measure(u, b) != b / 2:
        fields["BREAKPOINT"] = b
        fields["REASON"] = "middle piece is not x - b/2 on [b, b+Δ]"
        return Report(FAIL, fields)
    head = _head_violation(u, b)
    if head is not None:
        x, g, env = head
        fields.update(BREAKPOINT=x, PREFIX_MEASURE=g, ENVELOPE=env,
                      REASON="prefix above b h(x/b)")
        return Report(FAIL, fields)
    tail = _head_violation(u.reflect(d), c)
    if tail is not None:
        y, g, env = tail
        fields.update(BREAKPOINT=d - y, SUFFIX_MEASURE=g, ENVELOPE=env,
                      REASON="suffix above c h((d-x)/c)")
        return Report(FAIL, fields)
    return Report(PASS, fields)


def split_candidates(a: IntervalUnion) -> list[Fraction]:
    """Split points b with ``[b, b+Δ] ⊆ A - inf A`` and ``g(b) = b/2``.

    On a component ``[s, e]`` the prefix measure has slope 1, so
    ``g(p) = p/2`` has the single solution ``p = 2(s - g(s))``.
    """
    u = a.translate(-a.inf)
    lam = _measure(u)
    delta = 2 * lam - u.sup
    out = []
    for s, e in u:
        if e - s < delta:
            continue
        p = 2 * (s - prefix_measure(u, s))
        if s <= p <= e - delta:
            out.append(p)
    return out


def is_critical(a: IntervalUnion) -> bool:
    lam = _measure(a)
    return lam > 0 and _measure(minkowski_sum(a, a)) == diam(a) + lam < 3 * lam


def critical_envelope_check(a: IntervalUnion) -> Report:
    """Verify the envelope for a critical set at every admissible split point.

    Requires ``λ(A+A) = diam(A) + λ(A) < 3λ(A)``. The report lists the passing
    split points; a critical set without any candidate raises
    :class:`InconsistencyError`.
    """
    if not a:
        raise EmptySetError("interval union")
    if not is_critical(a):
        raise PreconditionError("not critical: need λ(A+A) = diam(A) + λ(A) < 3λ(A)")
    candidates = split_candidates(a)
    if not candidates:
        raise InconsistencyError("no candidate interval of measure 2λ(A) - diam(A)", set=a)
    passing = []
    fields: dict[str, object] = {
        "DIAM": diam(a), "MEASURE": _measure(a), "DELTA": 2 * _measure(a) - diam(a),
        "CANDIDATES": tuple(candidates),
    }
    for i, b in enumerate(candidates):
        sub = envelope_check(a, b)
        if sub.result == PASS:
            passing.append(b)
        else:
            fields[f"CANDIDATE{i}_BREAKPOINT"] = sub.fields.get("BREAKPOINT")
    fields["PASSING_B"] = tuple(passing)
    return Report(PASS if passing else FAIL, fields)
