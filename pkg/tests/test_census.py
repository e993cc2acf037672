import pytest

import oracles
from leftstable import (
    InconsistencyError,
    IntSet,
    PreconditionError,
    census,
    enumerate_left_stable,
    sharpness_census,
    verify_remark_sets,
)
from leftstable.census import BudgetExceeded, census_csv, dump_extremal_sets, theorem_class

# all left-stable A ⊆ [0, n] with 0, n ∈ A, counted once by the naive filter
NAIVE_COUNTS = {
    2: 2, 3: 3, 4: 5, 5: 7, 6: 12, 7: 16, 8: 27, 9: 37, 10: 58, 11: 80, 12: 131,
    13: 171, 14: 277, 15: 380, 16: 580, 17: 785, 18: 1250, 19: 1655, 20: 2616,
}
CLASS_COUNTS = {
    2: 0, 3: 1, 4: 1, 5: 2, 6: 3, 7: 4, 8: 6, 9: 7, 10: 11, 11: 12, 12: 22,
    13: 23, 14: 38, 15: 39, 16: 66, 17: 67, 18: 117, 19: 118, 20: 203,
}


def _membership_key(a, n):
    return tuple(i in a for i in range(1, n))


@pytest.mark.parametrize("n", sorted(NAIVE_COUNTS))
def test_counts_pinned(n):
    assert sum(1 for _ in enumerate_left_stable(n)) == NAIVE_COUNTS[n]
    assert len(theorem_class(n)) == CLASS_COUNTS[n]


@pytest.mark.parametrize("n", range(2, 15))
def test_matches_naive_filter(n):
    got = [frozenset(a) for a in enumerate_left_stable(n)]
    assert set(got) == set(oracles.left_stable_sets(n))
    assert got == sorted(got, key=lambda a: _membership_key(a, n))


def test_examples():
    assert list(enumerate_left_stable(4, 3, True)) == [IntSet([0, 3, 4])]
    assert list(enumerate_left_stable(2)) == [IntSet([0, 2]), IntSet([0, 1, 2])]


def test_range():
    with pytest.raises(PreconditionError):
        list(enumerate_left_stable(1))


def test_parallel_order_identical():
    serial = list(enumerate_left_stable(20, split_depth=6))
    parallel = list(enumerate_left_stable(20, jobs=3, split_depth=6))
    assert serial == parallel


def test_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_left_stable(40, budget=0))


def test_class_members_valid():
    for a in theorem_class(16):
        assert a.min() == 0 and a.max() == 16 and len(a) == 9
        assert oracles.is_left_stable(set(a)) and oracles.gcd_star(set(a)) == 1


def test_census_rows():
    rows = census(8)
    assert [r.x for r in rows] == list(range(2, 9))
    for r in rows:
        assert r.total_enumerated == 6
        assert all(oracles.prefix_count(a, r.x) == r.achieved_max for a in r.extremal_sets)
    assert census_csv(rows).splitlines()[0] == "n,x,bound,achieved_max,num_extremal,total_enumerated"
    assert dump_extremal_sets(rows).startswith("# n=8 x=2\n")


def test_sharpness_4_2():
    r = sharpness_census(4, 2)
    assert (r.bound, r.achieved_max, r.extremal_sets) == (2, 1, [IntSet([0, 3, 4])])


def test_strict_raises_on_excess():
    with pytest.raises(InconsistencyError):
        census(9, strict=True)


def test_never_exceeds_bound():
    """Bound check for n <= 20. Fails: e.g. n=9, x=4 reaches 3 > h+1 = 2."""
    over = [(n, r.x, r.achieved_max, r.bound)
            for n in range(2, 21) for r in census(n) if r.exceeds_bound]
    assert not over, f"{len(over)} rows exceed the bound, first {over[:5]}"


def test_sharp_everywhere():
    """Sharpness for n <= 20. Fails at x=2 for even n, among others."""
    loose = [(n, r.x, r.achieved_max, r.bound)
             for n in range(3, 21) for r in census(n) if not r.sharp]
    assert not loose, f"{len(loose)} rows miss the bound, first {loose[:5]}"


def test_remark_sets():
    rep = verify_remark_sets()
    assert rep.passed
    assert rep.fields["A_IN_CLASS"] and rep.fields["B_IN_CLASS"] and rep.fields["DISTINCT"]
