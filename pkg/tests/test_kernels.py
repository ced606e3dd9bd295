"""The three counting strategies must agree exactly."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_sets, sets
from sumprod import _kernels
from sumprod.core_sets import FiniteSet
from oracles import rep

big = st.builds(Fraction, st.integers(-2**70, 2**70), st.integers(1, 2**40))


@given(sets(max_size=10), nonzero_sets(max_size=10), st.sampled_from(_kernels.OPS))
def test_methods_agree(A, B, op):
    ref = _kernels.count_pairs(A, B, op, "hash")
    assert _kernels.count_pairs(A, B, op, "sort") == ref
    assert _kernels.count_pairs(A, B, op, "numpy") == ref
    assert sorted(_kernels.multiplicities(A, B, op, "numpy")) == sorted(ref.values())
    assert _kernels.distinct_values(A, B, op) == tuple(sorted(ref))


@given(sets(big, max_size=6), sets(big.filter(lambda x: x != 0), max_size=6),
       st.sampled_from(_kernels.OPS))
def test_large_values_fall_back_exactly(A, B, op):
    ref = _kernels.count_pairs(A, B, op, "sort")
    assert _kernels.count_pairs(A, B, op, "auto") == ref
    assert _kernels.count_pairs(A, B, op, "numpy") == ref


@given(sets(max_size=8), nonzero_sets(max_size=8), st.sampled_from(["diff", "quot"]))
def test_histogram_matches_oracle(A, B, op):
    assert _kernels.count_pairs(A, B, op) == rep(A, B, op)


@given(sets(max_size=8), nonzero_sets(max_size=8), sets(max_size=6),
       st.sampled_from(_kernels.OPS))
def test_membership_counts(A, B, T, op):
    Tset = set(T)
    expect = []
    for a in A:
        vals = {"sum": [a + b for b in B], "diff": [a - b for b in B],
                "prod": [a * b for b in B], "quot": [a / b for b in B]}[op]
        expect.append(sum(1 for v in vals if v in Tset))
    assert _kernels.membership_counts(A, B, op, T) == expect


def test_moment_is_exact():
    assert _kernels.moment([3, 2, 2, 1, 1], 4) == 115
    assert _kernels.moment([2**40], 3) == 2**120


def test_unknown_method():
    with pytest.raises(ValueError):
        _kernels.count_pairs(FiniteSet([1]), FiniteSet([1]), "sum", "fft")
