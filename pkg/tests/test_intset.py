import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from leftstable import (
    CapacityError,
    IntSet,
    LiteralSyntaxError,
    PreconditionError,
    format_set_literal,
    k_fold_sum,
    normalize,
    parse_set_literal,
    prefix,
    prefix_count,
    stats,
    sumset,
)
from leftstable.errors import EmptySetError
from leftstable.intset import get_capacity, reflect, set_capacity, translate

small_sets = st.frozensets(st.integers(0, 40), min_size=1, max_size=12)

REMARK_A = "0,11-13,22-26,33-48"


def test_literal_round_trip():
    a = parse_set_literal(REMARK_A)
    assert len(a) == 25
    assert format_set_literal(a) == REMARK_A


def test_literal_whitespace_and_overlap():
    assert parse_set_literal(" 0 , 2-4, 3-5 ") == IntSet([0, 2, 3, 4, 5])


@pytest.mark.parametrize("text", ["5-3", "a", "1-", "1,,2", "--1"])
def test_literal_rejects(text):
    with pytest.raises(LiteralSyntaxError):
        parse_set_literal(text)


def test_negative_elements_rejected():
    with pytest.raises(PreconditionError):
        IntSet([-1, 0])


def test_capacity():
    old = get_capacity()
    try:
        set_capacity(10)
        with pytest.raises(CapacityError):
            IntSet([11])
        IntSet([10])
    finally:
        set_capacity(old)


@given(small_sets, small_sets)
def test_sumset_matches_oracle(a, b):
    assert set(sumset(IntSet(a), IntSet(b))) == oracles.sumset(a, b)


def test_sumset_examples():
    assert sumset(IntSet([0, 1]), IntSet([0, 1])) == IntSet([0, 1, 2])
    assert sumset(IntSet([0, 2]), IntSet([1])) == IntSet([1, 3])


def test_sumset_empty():
    with pytest.raises(EmptySetError):
        sumset(IntSet(), IntSet([1]))


@given(small_sets, st.integers(1, 4))
def test_k_fold(a, k):
    expect = {0}
    for _ in range(k):
        expect = oracles.sumset(expect, a)
    assert set(k_fold_sum(IntSet(a), k)) == expect


def test_k_fold_rejects_zero():
    with pytest.raises(PreconditionError):
        k_fold_sum(IntSet([0, 1]), 0)


def test_k_fold_left_stable_window():
    a = parse_set_literal(REMARK_A)
    for k in range(1, 6):
        assert k_fold_sum(a, k) & IntSet.interval(0, 48) == a


@given(small_sets)
def test_stats(a):
    s = stats(IntSet(a))
    assert (s.min, s.max, s.cardinality) == (min(a), max(a), len(a))
    assert s.gcd_star == oracles.gcd_star(a)
    assert s.n_a == (max(a) - min(a)) // s.gcd_star


def test_stats_examples():
    s = stats(IntSet([3, 7, 11]))
    assert (s.diam, s.gcd_star, s.n_a) == (8, 4, 2)
    assert stats(IntSet([5])).gcd_star == 1


@given(small_sets)
def test_normalize(a):
    b = normalize(IntSet(a))
    g = oracles.gcd_star(a)
    assert set(b) == {(x - min(a)) // g for x in a}
    assert b.min() == 0


def test_translate_reflect_prefix():
    a = IntSet([0, 2, 5])
    assert translate(a, 3) == IntSet([3, 5, 8])
    assert reflect(a, 5) == IntSet([0, 3, 5])
    assert prefix(a, 2) == IntSet([0, 2])
    assert prefix_count(parse_set_literal(REMARK_A), 13) == 4
    with pytest.raises(PreconditionError):
        translate(a, -1)
