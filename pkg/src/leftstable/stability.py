"""Discrete additive left-stability and the staircase bound h.

A set ``A`` with ``min(A) = 0`` is left-stable when ``(A + A) ∩ [0, max A] = A``.
Because ``0 ∈ A`` forces ``A ⊆ A + A``, this is the same as closure under
addition below the diameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptySetError, InconsistencyError, PreconditionError
from .intset import IntSet, gcd_star_bits, iter_bits, prefix_count


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    witness: tuple[int, int, int] | None = None


@dataclass(frozen=True)
class HDiscParams:
    n: int
    x: int
    k: int
    value: int


def _anchored(a: IntSet) -> None:
    if not a:
        raise EmptySetError()
    if a.min() != 0:
        raise PreconditionError("not anchored at 0")


def is_left_stable(a: IntSet) -> StabilityReport:
    """Check closure of ``a`` under sums that stay within ``[0, max a]``.

    On failure the witness ``(p, q, p + q)`` is the lexicographically smallest
    pair with ``p + q <= max a`` and ``p + q`` missing.
    """
    _anchored(a)
    bits = a.bits
    n = a.max()
    window = (1 << (n + 1)) - 1
    for p in iter_bits(bits):
        if 2 * p > n:
            break
        missing = (bits << p) & window & ~bits
        if missing:
            s = (missing & -missing).bit_length() - 1
            return StabilityReport(False, (p, s - p, s))
    return StabilityReport(True)


def left_stable_bits(bits: int, n: int) -> bool:
    """Bitmask fast path of :func:`is_left_stable` for sweeps (bits has 0 and n)."""
    window = (1 << (n + 1)) - 1
    b = bits
    while b:
        low = b & -b
        p = low.bit_length() - 1
        if 2 * p > n:
            return True
        if (bits << p) & window & ~bits:
            return False
        b ^= low
    return True


def half_plus_one(n: int) -> int:
    """Cardinality ``floor((N+1)/2) + 1`` required by the discrete theorem."""
    return (n + 1) // 2 + 1


def h_disc_k(n: int, x: int) -> int:
    """The unique k with x in (n/k, n/(k-1)], i.e. (k-1)x <= n < kx."""
    return n // x + 1


def h_disc(n: int, x: int) -> HDiscParams:
    """Evaluate the staircase bound h at ``x`` for diameter ``n``.

    ``h = 1 + floor((2k(x-1) - 2(n - floor((n+1)/2))) / (k(k+1)))``, the exact
    integer regrouping of the nested-fraction formula.
    """
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if not 2 <= x <= n:
        raise PreconditionError(f"x out of range: need 2 <= x <= {n}, got {x}")
    k = h_disc_k(n, x)
    upper_half = n - (n + 1) // 2
    value = 1 + (2 * k * (x - 1) - 2 * upper_half) // (k * (k + 1))
    return HDiscParams(n=n, x=x, k=k, value=value)


def h_disc_monotone_scan(n: int) -> bool:
    if n < 3:
        raise PreconditionError("n must be at least 3")
    prev = h_disc(n, 2).value
    for x in range(3, n + 1):
        cur = h_disc(n, x).value
        if cur < prev:
            return False
        prev = cur
    return True


def satisfies_theorem_hypotheses(a: IntSet) -> bool:
    """min 0, gcd 1, left-stable and |A| = floor((N+1)/2) + 1."""
    if not a or a.min() != 0 or len(a) < 2:
        return False
    n = a.max()
    return (
        gcd_star_bits(a.bits) == 1
        and len(a) == half_plus_one(n)
        and is_left_stable(a).stable
    )


def lemma_disc_bound(a: IntSet, x: int, k: int) -> Fraction:
    """Right-hand side of the prefix-count lemma for a left-stable set.

    With ``d = gcd*(a)`` and ``N = max a`` the bound on ``|A_x|`` is
    ``2(k-1)/k + 2/(k(k+1)) * M`` where ``M = |A_{kx}|`` if ``kx <= N`` and
    ``M = |A| + (kx - N)/d`` otherwise.
    """
    _anchored(a)
    if len(a) < 2:
        raise PreconditionError("lemma hypothesis violated: |A| must be at least 2")
    if not is_left_stable(a).stable:
        raise PreconditionError("lemma hypothesis violated: A is not left-stable")
    if x not in a:
        raise PreconditionError(f"lemma hypothesis violated: x={x} is not in A")
    if k < 2:
        raise PreconditionError("lemma hypothesis violated: k must be at least 2")
    n = a.max()
    d = gcd_star_bits(a.bits)
    lo = (k - 1) * x
    first = -(-lo // d) * d
    progression = 0
    for m in range(first, n + 1, d):
        progression |= 1 << m
    window = ((1 << (n + 1)) - 1) >> lo << lo if lo <= n else 0
    if a.bits & window == progression:
        raise PreconditionError(
            f"lemma hypothesis violated: A ∩ [{lo}, {n}] is all of {d}Z ∩ [{lo}, {n}]"
        )
    if k * x <= n:
        mass = Fraction(prefix_count(a, k * x))
    else:
        mass = len(a) + Fraction(k * x - n, d)
    return Fraction(2 * (k - 1), k) + Fraction(2, k * (k + 1)) * mass


def extremal_disc_parts(n: int, x: int) -> tuple[int, int, list[tuple[int, int]], int]:
    """Raw pieces of the candidate extremal set: (k, h, blocks, tail_start)."""
    params = h_disc(n, x)
    k, h = params.k, params.value
    blocks = [(i * (x - h + 1), i * x) for i in range(k)]
    tail_start = k * (k - 1) // 2 * (h - 1) + k + n - (n + 1) // 2
    return k, h, blocks, tail_start


def construct_extremal_disc(n: int, x: int) -> IntSet:
    """Build ``∪_{i<k} [i(x-h+1), ix] ∪ [k(k-1)/2 (h-1) + k + N - ⌊(N+1)/2⌋, N]``.

    The block union is meant to be left-stable with ``⌊(N+1)/2⌋ + 1`` elements
    and ``h(x) + 1`` of them in ``[0, x]``. Every postcondition is checked and
    any failure raises :class:`InconsistencyError` listing all that failed,
    together with ``(n, x, k, h)``.
    """
    k, h, blocks, tail_start = extremal_disc_parts(n, x)
    bits = 0
    for lo, hi in blocks:
        bits |= ((1 << (hi - lo + 1)) - 1) << lo
    if tail_start <= n:
        bits |= ((1 << (n - tail_start + 1)) - 1) << tail_start
    result = IntSet.from_bits(bits)

    failed = []
    if not ((k - 1) * x + 1 <= tail_start <= k * (x - h + 1)):
        failed.append("sandwich")
    if not is_left_stable(result).stable:
        failed.append("stability")
    if len(result) != half_plus_one(n):
        failed.append("cardinality")
    if prefix_count(result, x) != h + 1:
        failed.append("prefix_count")
    if failed:
        raise InconsistencyError(
            f"extremal construction failed {', '.join(failed)} at n={n}, x={x}",
            n=n, x=x, k=k, h=h, tail_start=tail_start, failed=tuple(failed),
            result=result,
        )
    return result
