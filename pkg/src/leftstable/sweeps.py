"""Exhaustive and randomized sweeps over small cases.

The pair sweeps run over every (A, B) with A, B ⊆ [0, m]. A Python loop over
millions of pairs is too slow, so for each A the sumsets with *all* B are
formed at once on a numpy array of bitmasks (one shift-or per element of A).
The per-pair logic mirrors :func:`freiman_3k4_pair_check` and
:func:`grynkiewicz_check`; the test suite cross-checks both paths on samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from . import continuum
from .census import census, enumerate_left_stable
from .errors import InconsistencyError, PreconditionError
from .freiman import classify
from .intset import IntSet, gcd_star_bits, iter_bits, prefix_count
from .stability import construct_extremal_disc, h_disc_monotone_scan, lemma_disc_bound

RUZSA_SEED = 20240917


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list[Any] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failures"


def _all_masks(max_element: int) -> np.ndarray:
    return np.arange(1, 1 << (max_element + 1), dtype=np.int64)


def _mask_tables(masks: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Per-mask (size, min, diam, gcd*) with the singleton convention gcd* = 1."""
    size = np.bitwise_count(masks).astype(np.int64)
    low = masks & -masks
    lo = np.log2(low).astype(np.int64)
    hi = np.floor(np.log2(masks)).astype(np.int64)
    g = np.array([gcd_star_bits(int(m)) for m in masks], dtype=np.int64)
    return size, lo, hi - lo, g


def sweep_freiman_bound(max_element: int = 14) -> SweepResult:
    """``|A+A| >= min(3|A|-3, |A|+N_A)`` for every A ⊆ [0, max_element] with |A| >= 2."""
    res = SweepResult(f"Freiman bound over subsets of [0,{max_element}]")
    for bits in range(1, 1 << (max_element + 1)):
        if bits.bit_count() < 2:
            continue
        res.checked += 1
        try:
            classify(IntSet.from_bits(bits))
        except InconsistencyError as exc:
            res.failures.append(exc.details)
    return res


def _longest_runs(sums: np.ndarray, step: np.ndarray) -> np.ndarray:
    runs = np.zeros(len(sums), dtype=np.int64)
    cur = sums.copy()
    while cur.any():
        runs += cur != 0
        cur &= cur >> step
    return runs


def sweep_freiman_pairs(max_element: int = 10) -> SweepResult:
    """3k-4 conclusions for all pairs A, B ⊆ [0, m] with |B| <= |A| meeting the hypothesis."""
    res = SweepResult(f"3k-4 pairs over subsets of [0,{max_element}]")
    masks = _all_masks(max_element)
    size, lo, dm, g = _mask_tables(masks)
    shape = masks >> lo
    raw_g = np.where(dm > 0, g, 0)
    for ia in range(len(masks)):
        a = int(masks[ia])
        ka = int(size[ia])
        sel = size <= ka
        bm, kb = masks[sel], size[sel]
        sums = np.zeros_like(bm)
        for e in iter_bits(a):
            sums |= bm << e
        ks = np.bitwise_count(sums).astype(np.int64)
        delta = ((shape[sel] == shape[ia]) & (kb == ka)).astype(np.int64)
        met = ks <= ka + 2 * kb - 3 - delta
        if not met.any():
            continue
        res.checked += int(met.sum())
        step = np.gcd(raw_g[sel][met], raw_g[ia])
        step = np.where(step == 0, 1, step)
        ks_m, kb_m = ks[met], kb[met]
        p_a = dm[ia] // step + 1
        p_b = dm[sel][met] // step + 1
        p_sum = _longest_runs(sums[met], step)
        bad = (p_a > ks_m - kb_m + 1) | (p_b > ks_m - ka + 1) | (p_sum < ka + kb_m - 1)
        for j in np.flatnonzero(bad):
            res.failures.append((a, int(bm[met][j])))
    return res


def _s_prime_max(size_a: int, size_b: int) -> int:
    s = 1
    while 2 * size_a >= (s + 1) * s * (size_b - 2) + 2 * (s + 1):
        s += 1
    return s


def sweep_grynkiewicz(max_element: int = 12) -> SweepResult:
    """Grynkiewicz check for all A, B ⊆ [0, m], |B| >= 3, every admissible s'.

    The conclusion ``|A+B| >= |A| + s'(|B|-2) + 1`` strengthens with s', and
    every s' up to the largest admissible one is admissible, so checking each
    s' separately is done by comparing against the count of admissible values.
    """
    res = SweepResult(f"Grynkiewicz proposition over subsets of [0,{max_element}]")
    masks = _all_masks(max_element)
    size, _, dm, g = _mask_tables(masks)
    keep = size >= 3
    bm, kb, n_b = masks[keep], size[keep], dm[keep] // g[keep]
    for a in range(1, 1 << (max_element + 1)):
        ka = a.bit_count()
        sums = np.zeros_like(bm)
        for e in iter_bits(a):
            sums |= bm << e
        ks = np.bitwise_count(sums).astype(np.int64)
        ante = n_b > ks - ka + 1
        if not ante.any():
            continue
        for m in np.unique(kb[ante]):
            m = int(m)
            group = ante & (kb == m)
            top = _s_prime_max(ka, m)
            for s_prime in range(1, top + 1):
                res.checked += int(group.sum())
                bad = group & (ks < ka + s_prime * (m - 2) + 1)
                for j in np.flatnonzero(bad):
                    res.failures.append((a, int(bm[j]), s_prime))
    return res


def sweep_lemma_disc(max_n: int = 20) -> SweepResult:
    """Prefix-count lemma bound on every left-stable set with max <= max_n, x ∈ A \\ {0}, valid k."""
    res = SweepResult(f"discrete lemma over left-stable sets up to {max_n}")
    for n in range(1, max_n + 1):
        family = [IntSet([0, 1])] if n == 1 else enumerate_left_stable(n)
        for a in family:
            for x in a:
                if x == 0:
                    continue
                k = 2
                while (k - 1) * x <= n:
                    try:
                        rhs = lemma_disc_bound(a, x, k)
                    except PreconditionError:
                        k += 1
                        continue
                    res.checked += 1
                    if prefix_count(a, x) > rhs:
                        res.failures.append((str(a), x, k, prefix_count(a, x), rhs))
                    k += 1
    return res


def sweep_extremal_disc(max_n: int = 200) -> SweepResult:
    res = SweepResult(f"extremal construction for n <= {max_n}")
    for n in range(2, max_n + 1):
        for x in range(2, n + 1):
            res.checked += 1
            try:
                construct_extremal_disc(n, x)
            except InconsistencyError as exc:
                res.failures.append((n, x, exc.details["failed"]))
    return res


def sweep_census(max_n: int = 24, **kwargs) -> tuple[SweepResult, SweepResult]:
    """Census over n <= max_n: (bound never exceeded, bound always attained)."""
    never = SweepResult(f"census bound never exceeded, n <= {max_n}")
    sharp = SweepResult(f"census bound attained, n <= {max_n}")
    for n in range(2, max_n + 1):
        for row in census(n, **kwargs):
            never.checked += 1
            sharp.checked += 1
            if row.exceeds_bound:
                never.failures.append((n, row.x, row.achieved_max, row.bound))
            if not row.sharp:
                sharp.failures.append((n, row.x, row.achieved_max, row.bound))
    return never, sharp


def sweep_h_monotone(max_n: int = 500) -> SweepResult:
    res = SweepResult(f"h_disc nondecreasing for n <= {max_n}")
    for n in range(3, max_n + 1):
        res.checked += 1
        if not h_disc_monotone_scan(n):
            res.failures.append(n)
    return res


def sweep_h_cont_breakpoints(max_k: int = 100) -> SweepResult:
    res = SweepResult(f"h_cont continuous at 1/k for k <= {max_k}")
    for k in range(2, max_k + 1):
        res.checked += 1
        t = Fraction(1, k)
        if continuum.h_branch(t, 1, k) != continuum.h_branch(t, 1, k + 1):
            res.failures.append(k)
    return res


def sweep_ruzsa(count: int = 10_000, seed: int = RUZSA_SEED,
                max_intervals: int = 6, max_denominator: int = 48) -> SweepResult:
    """Random pairs: Ruzsa's disjunction and ``λ(A+B) >= λ(A) + λ(B)``."""
    res = SweepResult(f"Ruzsa on {count} random pairs (seed {seed})")
    rng = random.Random(seed)
    while res.checked < count:
        a = continuum.random_union(rng, max_intervals, max_denominator)
        b = continuum.random_union(rng, max_intervals, max_denominator)
        la, lb = continuum.measure(a), continuum.measure(b)
        if la == 0 or lb == 0:
            continue
        res.checked += 1
        try:
            report = continuum.ruzsa_check(a, b)
        except InconsistencyError:
            res.failures.append(("ruzsa", a, b))
            continue
        if report.sum_measure < la + lb:
            res.failures.append(("superadditivity", a, b))
    return res
