from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_sets, rationals, sets
from oracles import energy as oracle_energy, linear_solutions, quadruples_diff, rep
from oracles import sigma as oracle_sigma
from sumprod.core_sets import FiniteSet, combine, popular_slice
from sumprod.energy import (additive_energy, best_bucket, count_linear_solutions,
                            dyadic_buckets, energy, energy_moments, katz_koester_all,
                            katz_koester_check, multiplicative_energy, pigeonhole_holds,
                            popular_spectrum, rep_histogram, sigma_sup)
from sumprod.errors import DivisorZeroError, DomainError, ResourceLimitError

S = FiniteSet
F = Fraction


def test_histogram_examples():
    A = S([1, 2, 3])
    assert rep_histogram(A, A, "diff").counts == {0: 3, 1: 2, -1: 2, 2: 1, -2: 1}
    G = S([1, 2, 4, 8])
    assert rep_histogram(G, G, "quot").counts == {
        1: 4, 2: 3, F(1, 2): 3, 4: 2, F(1, 4): 2, 8: 1, F(1, 8): 1}


def test_histogram_domain():
    with pytest.raises(DomainError):
        rep_histogram(S(), S([1]), "diff")
    with pytest.raises(DivisorZeroError):
        rep_histogram(S([1]), S([0, 1]), "quot")


def test_energy_examples():
    A = S([1, 2, 3])
    assert [energy(A, A, "diff", m).value for m in (1, 2, 3, 4)] == [9, 19, 45, 115]
    assert multiplicative_energy(S([1, 2, 4, 8])) == 44 == additive_energy(S([1, 2, 3, 4]))
    assert energy(S([1, 2, 4, 8]), S([1, 2, 4, 8]), "quot", 3).value == 136


@given(sets(max_size=8), nonzero_sets(max_size=8), st.sampled_from(["diff", "quot"]))
def test_histogram_invariants(A, B, op):
    h = rep_histogram(A, B, op)
    assert h.total() == len(A) * len(B)
    assert all(c >= 1 for c in h.counts.values())
    assert set(h.counts) == set(combine(A, B, "diff" if op == "diff" else "quot"))
    assert h.counts == rep(A, B, op)


@given(sets(max_size=8))
def test_self_difference_histogram_symmetric(A):
    h = rep_histogram(A, A, "diff")
    assert h[0] == len(A)
    assert all(h[-x] == c for x, c in h.counts.items())


@given(sets(max_size=6))
def test_energy_is_quadruple_count(A):
    assert additive_energy(A) == quadruples_diff(A)


@given(sets(max_size=8), nonzero_sets(max_size=8), st.sampled_from(["diff", "quot"]))
def test_energy_bounds_and_oracle(A, B, op):
    h = rep_histogram(A, B, op)
    mom = energy_moments(A, B, op)
    for m in (1, 2, 3, 4):
        v = energy(A, B, op, m).value
        assert v == mom[m] == oracle_energy(A, B, op, m)
        assert h.max() ** m <= v <= (len(A) * len(B)) ** m
    assert mom[1] == len(A) * len(B)


@given(nonzero_sets(max_size=8))
def test_multiplicative_energy_floor(A):
    assert multiplicative_energy(A) >= len(A) ** 2


@given(nonzero_sets(max_size=8), nonzero_sets(max_size=8))
def test_cross_energy_cauchy_schwarz(A, B):
    assert multiplicative_energy(A, B) ** 2 <= multiplicative_energy(A) * multiplicative_energy(B)


@given(sets(max_size=10))
def test_sumset_energy_chain(A):
    n = len(A)
    e2, e3 = additive_energy(A), additive_energy(A, moment=3)
    assert n**4 <= len(A + A) * e2
    assert e2 * e2 <= e3 * n * n


def test_dyadic_buckets_and_tiebreak():
    b = dyadic_buckets({"a": 1, "b": 3, "c": 2, "d": 5})
    assert b == {1: ["a"], 2: ["b", "c"], 4: ["d"]}
    assert best_bucket({1: [0, 0], 2: [0]}, lambda t, k: len(k) * t) == 1


def test_pigeonhole_constant_needs_power_of_two():
    # quotient third moment of {1,2,3}: selected band mass 8, total 33, two bands
    h = rep_histogram(S([1, 2, 3]), S([1, 2, 3]), "quot")
    b = dyadic_buckets(h.counts)
    t = best_bucket(b, lambda t, k: len(k) * t**3)
    mass = len(b[t]) * t**3
    assert (h.moment(3), mass, len(b)) == (33, 8, 2)
    assert not mass * 2 * len(b) >= 33           # the constant 2 alone is not enough
    assert pigeonhole_holds(mass, 33, len(b), 3)


@given(sets(max_size=9), nonzero_sets(max_size=9), st.sampled_from([1, 2, 3, 4]))
def test_pigeonhole_always_holds(A, B, m):
    h = rep_histogram(A, B, "diff")
    b = dyadic_buckets(h.counts)
    t = best_bucket(b, lambda t, k: len(k) * t**m)
    assert pigeonhole_holds(len(b[t]) * t**m, h.moment(m), len(b), m)


def test_sigma_examples():
    w = sigma_sup(S([1, 2]), S([1, 2]), S([1, 2]))
    assert w.count == 2
    w = sigma_sup(S([1, 2, 3]), S([1, 2, 3]), S([1, 2, 3]), keep_triples=True)
    assert w.count == 5 and len(w.triples) == 5
    assert count_linear_solutions(S([1, 2, 3]), S([1, 2, 3]), S([1, 2, 3]), 1, 1, -2) == 5


def test_sigma_cap():
    A = S(range(13))
    with pytest.raises(ResourceLimitError):
        sigma_sup(A, A, A)


small = st.lists(st.integers(-6, 6), min_size=1, max_size=4).map(S)


@given(small, small, small)
def test_sigma_matches_brute_force(A, B, C):
    w = sigma_sup(A, B, C)
    assert w.count == oracle_sigma(A, B, C)
    assert w.count == linear_solutions(A, B, C, *w.coefficients)
    assert all(w.coefficients)
    assert w.count <= len(A) * len(B)
    assert sigma_sup(A, B, C, method="hash") == w


@given(small, small, small, st.integers(1, 5), st.integers(-5, 5).filter(bool),
       st.integers(-5, 5).filter(bool))
def test_sigma_dominates_any_coefficients(A, B, C, s1, s2, s3):
    assert linear_solutions(A, B, C, s1, s2, s3) <= sigma_sup(A, B, C).count


def test_popular_spectrum_examples():
    sp = popular_spectrum(S([1, 2, 4, 8]))
    assert sp.level(4) == S([1])
    assert sp.best_mass == 16 and sp.best_t == 2 and sp.energy == 44
    assert sp.best_mass * 4 * len(sp.levels) >= 44
    assert popular_spectrum(S([5])).levels == ((1, S([1])),)
    with pytest.raises(DomainError):
        popular_spectrum(S([0, 1]))


@given(nonzero_sets(max_size=9))
def test_spectrum_partitions_quotient_set(A):
    sp = popular_spectrum(A)
    union = S()
    total = 0
    h = rep_histogram(A, A, "quot")
    for t, St in sp.levels:
        assert all(t <= h[x] < 2 * t for x in St)
        union = union | St
        total += len(St)
    assert union == A / A and total == len(union)


def test_katz_koester_examples():
    A = S([1, 2, 4])
    r = katz_koester_check(A, 2)
    assert r.holds and r.slice == S([2, 4])
    assert katz_koester_check(A, 1).holds
    with pytest.raises(DomainError):
        katz_koester_check(A, 3)


@given(nonzero_sets(max_size=10))
def test_katz_koester_everywhere(A):
    assert katz_koester_all(A) == []
    for lam in list(A / A)[:5]:
        r = katz_koester_check(A, lam)
        assert r.holds and r.slice == popular_slice(A, lam)
