"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here imports the package: every answer is computed from plain Python
sets and Fractions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations


def sumset(a, b):
    return {x + y for x in a for y in b}


def is_left_stable(a):
    a = set(a)
    n = max(a)
    return all(p + q in a for p in a for q in a if p + q <= n)


def gcd_star(a):
    lo = min(a)
    return math.gcd(*(x - lo for x in a)) or 1


def left_stable_sets(n, cardinality=None, gcd1=False):
    """All left-stable A ⊆ [0, n] with 0, n ∈ A, by filtering every subset of [1, n-1]."""
    out = []
    inner = range(1, n)
    sizes = range(n) if cardinality is None else [cardinality - 2]
    for r in sizes:
        if r < 0:
            continue
        for mid in combinations(inner, r):
            a = {0, n, *mid}
            if is_left_stable(a) and (not gcd1 or gcd_star(a) == 1):
                out.append(frozenset(a))
    return out


def h_disc(n, x):
    """The staircase bound via its nested-fraction form and a linear scan for k."""
    k = 2
    while not ((k - 1) * x <= n < k * x):
        k += 1
    inner = 2 * (x - 1) - Fraction(2, k) * (n - (n + 1) // 2)
    return k, 1 + math.floor(inner / (k + 1))


def prefix_count(a, x):
    return sum(1 for e in a if e <= x)


def longest_ap(s, step):
    best = 0
    for start in s:
        if start - step in s:
            continue
        length = 0
        while start + length * step in s:
            length += 1
        best = max(best, length)
    return best
