from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from leftstable import (
    InconsistencyError,
    IntSet,
    PreconditionError,
    construct_extremal_disc,
    h_disc,
    h_disc_monotone_scan,
    is_left_stable,
    lemma_disc_bound,
    normalize,
    parse_set_literal,
    prefix_count,
)
from leftstable.sweeps import sweep_lemma_disc

REMARK_A = parse_set_literal("0,11-13,22-26,33-48")
anchored = st.frozensets(st.integers(1, 30), max_size=10).map(lambda s: s | {0})


def test_stable_examples():
    assert is_left_stable(REMARK_A).stable
    assert is_left_stable(IntSet([0, 2, 4])).stable
    rep = is_left_stable(IntSet([0, 1, 3]))
    assert not rep.stable and rep.witness == (1, 1, 2)


def test_not_anchored():
    with pytest.raises(PreconditionError, match="not anchored at 0"):
        is_left_stable(IntSet([1, 2]))


@given(anchored)
def test_stability_matches_oracle(a):
    rep = is_left_stable(IntSet(a))
    assert rep.stable == oracles.is_left_stable(a)
    if not rep.stable:
        p, q, s = rep.witness
        assert p in a and q in a and s == p + q and s not in a and s <= max(a)


@given(anchored)
def test_stability_dilation_invariant(a):
    d = IntSet(3 * x for x in a)
    assert is_left_stable(d).stable == is_left_stable(normalize(d)).stable


@pytest.mark.parametrize("n,x,k,value", [(48, 13, 4, 3), (48, 12, 5, 3), (48, 48, 2, 24)])
def test_h_disc_fixtures(n, x, k, value):
    p = h_disc(n, x)
    assert (p.k, p.value) == (k, value)


def test_h_disc_boundary_k():
    # x | n sits on the right end of (n/k, n/(k-1)]
    assert h_disc(48, 16).k == 4
    assert h_disc(48, 17).k == 3
    assert h_disc(48, 24).k == 3
    assert h_disc(48, 25).k == 2


def test_h_disc_matches_nested_form():
    for n in range(2, 121):
        for x in range(2, n + 1):
            p = h_disc(n, x)
            assert (p.k, p.value) == oracles.h_disc(n, x)


@pytest.mark.parametrize("x", [0, 1, 49])
def test_h_disc_range(x):
    with pytest.raises(PreconditionError, match="x out of range"):
        h_disc(48, x)


def test_h_at_n_is_half():
    for n in range(2, 60):
        assert h_disc(n, n).value == (n + 1) // 2


def test_monotone():
    assert h_disc_monotone_scan(48)
    assert h_disc_monotone_scan(7)
    assert all(h_disc_monotone_scan(n) for n in range(3, 501))


def test_lemma_fixture():
    assert lemma_disc_bound(REMARK_A, 13, 2) == 4
    assert prefix_count(REMARK_A, 13) <= 4


def test_lemma_far_branch():
    # kx > N uses |A| + (kx - N)/d
    assert lemma_disc_bound(REMARK_A, 26, 2) == 1 + Fraction(1, 3) * (25 + 4)


@pytest.mark.parametrize("a,x,k,clause", [
    (IntSet([0, 1, 3]), 1, 2, "not left-stable"),
    (REMARK_A, 14, 2, "not in A"),
    (REMARK_A, 13, 1, "k must be"),
    (REMARK_A, 33, 2, r"A ∩ \[33, 48\]"),
])
def test_lemma_hypotheses(a, x, k, clause):
    with pytest.raises(PreconditionError, match="lemma hypothesis violated"):
        lemma_disc_bound(a, x, k)
    with pytest.raises(PreconditionError, match=clause):
        lemma_disc_bound(a, x, k)


def test_lemma_exhaustive():
    """Every left-stable set up to 20 and every admissible (x, k).

    This fails: the lemma does not hold for sets whose large elements have a
    common divisor, e.g. {0,2,4,6,8,9} with x=4, k=2.
    """
    res = sweep_lemma_disc(20)
    assert res.checked == 34725
    assert res.passed, res.summary() + f"; first: {res.failures[:3]}"


def test_extremal_fixtures():
    assert construct_extremal_disc(48, 13) == REMARK_A
    assert prefix_count(construct_extremal_disc(48, 12), 12) == 4


def test_extremal_failure_carries_details():
    with pytest.raises(InconsistencyError) as info:
        construct_extremal_disc(6, 3)
    d = info.value.details
    assert (d["n"], d["x"]) == (6, 3)
    assert {"k", "h", "failed"} <= d.keys()


def test_extremal_sweep_small():
    """Postconditions for all n <= 40 (the full n <= 200 sweep is an acceptance criterion)."""
    bad = []
    for n in range(2, 41):
        for x in range(2, n + 1):
            try:
                construct_extremal_disc(n, x)
            except InconsistencyError as exc:
                bad.append((n, x, exc.details["failed"]))
    assert not bad, f"{len(bad)} failures, first {bad[:5]}"

