"""Finite sets of nonnegative integers stored as Python int bitmasks.

Bit ``i`` of the mask is set iff ``i`` is an element. Every discrete module
works on :class:`IntSet`; sumsets use the shift-or kernel, which is the hot
loop of the census.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

from .errors import CapacityError, EmptySetError, LiteralSyntaxError, PreconditionError

DEFAULT_CAPACITY = 4096
_capacity = DEFAULT_CAPACITY


def get_capacity() -> int:
    return _capacity


def set_capacity(capacity: int) -> None:
    """Change the largest element any IntSet may hold."""
    global _capacity
    if capacity < 0:
        raise ValueError("capacity must be nonnegative")
    _capacity = capacity


def _check_bits(bits: int) -> int:
    if bits < 0:
        raise PreconditionError("negative bitmask")
    if bits.bit_length() - 1 > _capacity:
        raise CapacityError(
            f"element {bits.bit_length() - 1} exceeds capacity {_capacity}"
        )
    return bits


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``bits`` in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class IntSet:
    """Immutable finite subset of the nonnegative integers."""

    __slots__ = ("_bits",)

    def __init__(self, elements: Iterable[int] = ()) -> None:
        bits = 0
        for e in elements:
            e = int(e)
            if e < 0:
                raise PreconditionError(f"negative element {e}: IntSet lives in N")
            bits |= 1 << e
        self._bits = _check_bits(bits)

    @classmethod
    def from_bits(cls, bits: int) -> "IntSet":
        obj = cls.__new__(cls)
        obj._bits = _check_bits(bits)
        return obj

    @classmethod
    def interval(cls, lo: int, hi: int) -> "IntSet":
        """The consecutive integers lo..hi (empty when hi < lo)."""
        if hi < lo:
            return cls()
        if lo < 0:
            raise PreconditionError("interval must lie in N")
        return cls.from_bits(((1 << (hi - lo + 1)) - 1) << lo)

    @property
    def bits(self) -> int:
        return self._bits

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self._bits)

    def __len__(self) -> int:
        return self._bits.bit_count()

    def __bool__(self) -> bool:
        return self._bits != 0

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and x >= 0 and (self._bits >> x) & 1 == 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntSet):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("IntSet", self._bits))

    def __repr__(self) -> str:
        return f"IntSet({format_set_literal(self)!r})"

    def __str__(self) -> str:
        return format_set_literal(self)

    def __or__(self, other: "IntSet") -> "IntSet":
        return IntSet.from_bits(self._bits | other._bits)

    def __and__(self, other: "IntSet") -> "IntSet":
        return IntSet.from_bits(self._bits & other._bits)

    def __sub__(self, other: "IntSet") -> "IntSet":
        return IntSet.from_bits(self._bits & ~other._bits)

    def min(self) -> int:
        if not self._bits:
            raise EmptySetError()
        return (self._bits & -self._bits).bit_length() - 1

    def max(self) -> int:
        if not self._bits:
            raise EmptySetError()
        return self._bits.bit_length() - 1

    def elements(self) -> list[int]:
        return list(iter_bits(self._bits))


@dataclass(frozen=True)
class SetStats:
    """Freiman statistics of a nonempty set.

    ``gcd_star`` is the gcd of ``A - min(A)``, taken to be 1 for singletons so
    that ``n_a = diam / gcd_star`` is always defined.
    """

    min: int
    max: int
    diam: int
    gcd_star: int
    n_a: int
    cardinality: int


def _require_nonempty(a: IntSet, what: str = "set") -> None:
    if not a:
        raise EmptySetError(what)


def sumset_bits(a: int, b: int) -> int:
    """Shift-or Minkowski sum of two nonempty bitmasks (no capacity check)."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out |= b << (low.bit_length() - 1)
        a ^= low
    return out


def sumset(a: IntSet, b: IntSet) -> IntSet:
    """Return ``{x + y : x in a, y in b}``."""
    _require_nonempty(a, "first operand")
    _require_nonempty(b, "second operand")
    return IntSet.from_bits(sumset_bits(a.bits, b.bits))


def k_fold_sum(a: IntSet, k: int) -> IntSet:
    """Minkowski sum of ``k`` copies of ``a``."""
    if k < 1:
        raise PreconditionError("k must be positive")
    _require_nonempty(a)
    out = a.bits
    for _ in range(k - 1):
        out = _check_bits(sumset_bits(out, a.bits))
    return IntSet.from_bits(out)


def gcd_star_bits(bits: int) -> int:
    lo = (bits & -bits).bit_length() - 1
    g = 0
    for e in iter_bits(bits ^ (1 << lo)):
        g = gcd(g, e - lo)
        if g == 1:
            break
    return g or 1


def stats(a: IntSet) -> SetStats:
    _require_nonempty(a)
    lo, hi = a.min(), a.max()
    g = gcd_star_bits(a.bits)
    return SetStats(
        min=lo, max=hi, diam=hi - lo, gcd_star=g, n_a=(hi - lo) // g, cardinality=len(a)
    )


def normalize(a: IntSet) -> IntSet:
    """Translate to min 0 and divide by gcd*; the result has gcd* 1."""
    st = stats(a)
    if st.gcd_star == 1:
        return IntSet.from_bits(a.bits >> st.min)
    return IntSet((x - st.min) // st.gcd_star for x in a)


def translate(a: IntSet, t: int) -> IntSet:
    if not a:
        return a
    if a.min() + t < 0:
        raise PreconditionError("translate would leave N")
    return IntSet.from_bits(a.bits << t if t >= 0 else a.bits >> -t)


def reflect(a: IntSet, n: int) -> IntSet:
    """Return ``n - a``; every element of ``a`` must be <= n."""
    if a and a.max() > n:
        raise PreconditionError("reflection point below max element")
    return IntSet(n - x for x in a)


def prefix(a: IntSet, x: int) -> IntSet:
    """``a`` intersected with ``[0, x]``."""
    if x < 0:
        return IntSet()
    return IntSet.from_bits(a.bits & ((1 << (x + 1)) - 1))


def prefix_count(a: IntSet, x: int) -> int:
    if x < 0:
        return 0
    return (a.bits & ((1 << (x + 1)) - 1)).bit_count()


_ITEM = re.compile(r"^(-?\d+)(?:-(-?\d+))?$")


def parse_int_literal(text: str) -> list[int]:
    """Parse the set literal grammar into a sorted list of distinct integers.

    ``item := INT | INT "-" INT`` separated by commas, whitespace ignored.
    Negative integers are accepted here so the CLI can translate raw sets.
    """
    compact = "".join(text.split())
    if not compact:
        return []
    values: set[int] = set()
    for item in compact.split(","):
        m = _ITEM.match(item)
        if m is None:
            raise LiteralSyntaxError(f"bad set literal item {item!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) is not None else lo
        if hi < lo:
            raise LiteralSyntaxError(f"descending range {item!r}")
        values.update(range(lo, hi + 1))
    return sorted(values)


def parse_set_literal(text: str) -> IntSet:
    return IntSet(parse_int_literal(text))


def format_set_literal(a: IntSet | Iterable[int], offset: int = 0) -> str:
    """Render maximal runs as ``lo-hi`` and isolated points as ``x``."""
    items = []
    run_lo = run_hi = None
    for x in a:
        if run_hi is not None and x == run_hi + 1:
            run_hi = x
            continue
        if run_lo is not None:
            items.append((run_lo, run_hi))
        run_lo = run_hi = x
    if run_lo is not None:
        items.append((run_lo, run_hi))
    return ",".join(
        str(lo + offset) if lo == hi else f"{lo + offset}-{hi + offset}" for lo, hi in items
    )
