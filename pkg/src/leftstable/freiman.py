"""Freiman 3k-4 statistics, critical-set decomposition and Grynkiewicz checks."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import EmptySetError, InconsistencyError, PreconditionError
from .intset import IntSet, gcd_star_bits, normalize, stats, sumset, sumset_bits
from .report import FAIL, PASS, VACUOUS, Report
from .stability import is_left_stable


class Category(enum.Enum):
    CRITICAL_NA = "CRITICAL_NA"
    EQUALITY_3K3 = "EQUALITY_3K3"
    ABOVE = "ABOVE"


@dataclass(frozen=True)
class FreimanClass:
    sum_size: int
    bound: int
    category: Category


@dataclass(frozen=True)
class CriticalDecomposition:
    """Normalized ``A = a1 ⊔ [run_start, run_end] ⊔ (N_A - a2)``.

    ``step`` and ``offset`` undo the normalization: the original set is
    ``offset + step * (normalized set)``.
    """

    a1: IntSet
    run_start: int
    run_end: int
    a2: IntSet
    step: int
    offset: int
    n_a: int

    @property
    def run_length(self) -> int:
        return self.run_end - self.run_start + 1

    def recompose(self) -> IntSet:
        return glue(self.a1, self.run_start, self.run_end, self.a2, self.n_a)


@dataclass(frozen=True)
class GrynkiewiczParams:
    s: int
    s_prime_max: int


def glue(a1: IntSet, run_start: int, run_end: int, a2: IntSet, n: int) -> IntSet:
    """Build ``a1 ∪ [run_start, run_end] ∪ (n - a2)``."""
    run = IntSet.interval(run_start, run_end)
    tail = IntSet(n - y for y in a2)
    return a1 | run | tail


def classify(a: IntSet) -> FreimanClass:
    """Place ``a`` relative to ``|A+A| >= min(3|A|-3, |A|+N_A)``.

    Raises :class:`InconsistencyError` if the inequality itself fails.
    """
    if not a:
        raise EmptySetError()
    if len(a) < 2:
        raise PreconditionError("classify needs at least 2 elements")
    b = normalize(a)
    size = len(b)
    n_a = b.max()
    sum_size = sumset_bits(b.bits, b.bits).bit_count()
    tripled = 3 * size - 3
    bound = min(tripled, size + n_a)
    if sum_size < bound:
        raise InconsistencyError(
            "|A+A| < min(3|A|-3, |A|+N_A)", set=a, sum_size=sum_size, bound=bound
        )
    if sum_size == size + n_a < tripled:
        category = Category.CRITICAL_NA
    elif sum_size == tripled <= size + n_a:
        category = Category.EQUALITY_3K3
    else:
        category = Category.ABOVE
    return FreimanClass(sum_size=sum_size, bound=bound, category=category)


def longest_run_bits(bits: int, step: int) -> int:
    """Length of the longest progression of difference ``step`` inside ``bits``."""
    length = 0
    while bits:
        bits &= bits >> step
        length += 1
    return length


def _is_translate(a: IntSet, b: IntSet) -> bool:
    return len(a) == len(b) and a.bits >> a.min() == b.bits >> b.min()


def freiman_3k4_pair_check(a: IntSet, b: IntSet) -> Report:
    """Check the conclusions of the 3k-4 theorem for one pair.

    The progressions use the joint difference ``g = gcd(gcd*(A), gcd*(B))``:
    ``P_A`` and ``P_B`` are the shortest ``g``-progressions covering each set
    and ``P_{A+B}`` is the longest ``g``-progression inside ``A + B``.
    """
    if not a or not b:
        raise EmptySetError("both operands")
    if len(b) > len(a):
        raise PreconditionError("need |B| <= |A|")
    ka, kb = len(a), len(b)
    s = sumset(a, b)
    ks = len(s)
    delta = 1 if _is_translate(a, b) else 0
    fields: dict[str, object] = {
        "SIZE_A": ka, "SIZE_B": kb, "SUMSET_SIZE": ks, "DELTA": delta,
    }
    hypothesis = ks <= ka + 2 * kb - 3 - delta
    fields["HYPOTHESIS"] = hypothesis
    if not hypothesis:
        return Report(VACUOUS, fields)
    ga = gcd(*(x - a.min() for x in a))
    gb = gcd(*(x - b.min() for x in b))
    g = gcd(ga, gb) or 1
    p_a = (a.max() - a.min()) // g + 1
    p_b = (b.max() - b.min()) // g + 1
    p_sum = longest_run_bits(s.bits, g)
    fields.update({
        "COMMON_DIFFERENCE": g,
        "P_A": p_a, "P_A_MAX": ks - kb + 1,
        "P_B": p_b, "P_B_MAX": ks - ka + 1,
        "P_SUM": p_sum, "P_SUM_MIN": ka + kb - 1,
    })
    ok = p_a <= ks - kb + 1 and p_b <= ks - ka + 1 and p_sum >= ka + kb - 1
    return Report(PASS if ok else FAIL, fields)


def _stable_or_empty(s: IntSet) -> bool:
    return not s or (s.min() == 0 and is_left_stable(s).stable)


def decompose_critical(a: IntSet) -> CriticalDecomposition:
    """Split a critical set into a1, a run of consecutive integers, and N_A - a2.

    All split points are searched on the normalized set. Among valid splits the
    one with both outer parts nonempty is preferred; failing that, fewer empty
    parts, then a nonempty ``a1``, then the longest run, then the smallest
    start.
    """
    if classify(a).category is not Category.CRITICAL_NA:
        raise PreconditionError("decompose_critical needs a CRITICAL_NA set")
    st = stats(a)
    b = normalize(a)
    n = b.max()
    size = len(b)
    min_run = 2 * size - n - 2
    elems = b.elements()
    members = set(elems)

    best_key = None
    best = None
    for i in elems:
        a1 = IntSet.from_bits(b.bits & ((1 << i) - 1))
        if not _stable_or_empty(a1):
            continue
        j = i
        while j in members:
            if j - i + 1 >= min_run:
                a2 = IntSet(n - y for y in elems if y > j)
                if _stable_or_empty(a2):
                    empties = (not a1) + (not a2)
                    key = (empties, not a1, -(j - i), i)
                    if best_key is None or key < best_key:
                        best_key, best = key, (a1, i, j, a2)
            j += 1
    if best is None:
        raise InconsistencyError("decomposition not found", set=a)
    a1, i, j, a2 = best
    return CriticalDecomposition(
        a1=a1, run_start=i, run_end=j, a2=a2, step=st.gcd_star, offset=st.min, n_a=n
    )


def _threshold(s: int, size_b: int) -> Fraction:
    """``s(s-1)(|B|/2 - 1) + s``."""
    return s * (s - 1) * (Fraction(size_b, 2) - 1) + s


def grynkiewicz_params(size_a: int, size_b: int) -> GrynkiewiczParams:
    """Find s with ``s(s-1)(|B|/2-1)+s-1 < |A| <= s(s+1)(|B|/2-1)+s`` by ascending scan."""
    if size_b < 3:
        raise PreconditionError("|B| must be at least 3")
    if size_a < 1:
        raise PreconditionError("|A| must be at least 1")
    half = Fraction(size_b, 2) - 1
    s = 1
    while not (s * (s - 1) * half + s - 1 < size_a <= s * (s + 1) * half + s):
        s += 1
    s_prime = 1
    while _threshold(s_prime + 1, size_b) <= size_a:
        s_prime += 1
    return GrynkiewiczParams(s=s, s_prime_max=s_prime)


def grynkiewicz_check(a: IntSet, b: IntSet, s_prime: int) -> Report:
    """Check ``N_B > |A+B|-|A|+1  ⟹  |A+B| >= |A| + s'(|B|-2) + 1``."""
    if not a or not b:
        raise EmptySetError("both operands")
    if len(b) < 3:
        raise PreconditionError("|B| must be at least 3")
    if s_prime < 1:
        raise PreconditionError("s' must be positive")
    if len(a) < _threshold(s_prime, len(b)):
        raise PreconditionError("|A| is below s'(s'-1)(|B|/2-1)+s'")
    ka, kb = len(a), len(b)
    ks = len(sumset(a, b))
    n_b = b.max() - b.min()
    n_b //= gcd_star_bits(b.bits)
    fields: dict[str, object] = {
        "SIZE_A": ka, "SIZE_B": kb, "SUMSET_SIZE": ks, "N_B": n_b, "S_PRIME": s_prime,
    }
    antecedent = n_b > ks - ka + 1
    fields["ANTECEDENT"] = antecedent
    if not antecedent:
        return Report(VACUOUS, fields)
    need = ka + s_prime * (kb - 2) + 1
    fields["REQUIRED_SUMSET_SIZE"] = need
    return Report(PASS if ks >= need else FAIL, fields)
