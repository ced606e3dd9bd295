import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import nonzero_sets
from oracles import ratio_solutions
from sumprod.core_sets import FiniteSet
from sumprod.decompose import (DecompositionCertificate, ExtractionCertificate, ceil_log2,
                               count_ratio_solutions, decompose, extract,
                               fourth_moment_extract, revalidate, revalidate_extraction,
                               third_moment_extract, union_triangle_check)
from sumprod.energy import multiplicative_energy
from sumprod.errors import DomainError, InvariantViolation, ResourceLimitError
from sumprod.report import to_json
from sumprod.structure_stats import validate_D_witness

S = FiniteSet


def test_extraction_example():
    c = third_moment_extract(S([1, 2]), S([1, 2]), "mult")
    assert (c.delta, c.level, c.q, c.extracted) == (2, S([1]), 1, S([1, 2]))
    assert c.passed
    c = third_moment_extract(S([1, 2]), S([1, 2]), "add")
    assert (c.delta, c.level, c.extracted) == (2, S([0]), S([1, 2]))


def test_fourth_extraction_example():
    c = fourth_moment_extract(S([1, 2, 3]), S([1, 2, 3]))
    assert (c.delta, c.level, c.q, c.extracted) == (2, S([-1, 0, 1]), 2, S([1, 2, 3]))
    assert c.solutions == 670 and c.passed
    skipped = fourth_moment_extract(S([1, 2, 3]), S([1, 2, 3]), count_solutions=False)
    assert skipped.solutions is None and skipped.passed


@pytest.mark.parametrize("P, B, expected", [
    ([0], [1, 2], 6), ([-1, 0, 1], [1, 2, 3], 670), ([1, 2, 3], [1, 2, 3], 655)])
def test_ratio_solution_examples(P, B, expected):
    assert count_ratio_solutions(S(P), S(B)) == expected == ratio_solutions(P, B)


@settings(max_examples=20)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3).map(S),
       st.lists(st.integers(-4, 4), min_size=1, max_size=3).map(S))
def test_ratio_solutions_oracle(P, B):
    assert count_ratio_solutions(P, B) == ratio_solutions(P, B)


def test_ratio_solutions_cap():
    with pytest.raises(ResourceLimitError):
        count_ratio_solutions(S(range(7)), S([1]))


@given(nonzero_sets(min_size=1, max_size=9), nonzero_sets(min_size=1, max_size=6),
       st.sampled_from(["mult", "add", "fourth"]))
def test_extraction_postconditions(T, B, mode):
    c = extract(T, B, mode)
    assert c.passed
    assert c.extracted and c.extracted.issubset(T)
    assert 1 <= c.q <= min(len(B), len(c.level))
    assert c.delta <= len(B)
    if c.covering is not None:
        # the claimed covering value is what an independent validation returns
        assert validate_D_witness(c.extracted, c.covering) == c.covering_value
    revalidate_extraction(c)
    d = json.loads(to_json(c))
    assert json.loads(to_json(ExtractionCertificate.from_dict(d))) == d


def test_fourth_extraction_level_can_exceed_source():
    c = fourth_moment_extract(S([1]), S([-1, 1]))
    assert (c.level, c.q) == (S([0, 2]), 2) and c.passed


def test_extraction_rejects_zero():
    with pytest.raises(DomainError):
        extract(S([0, 1]), S([1]), "mult")


def test_union_examples():
    u = union_triangle_check([S([1]), S([2])], S([1, 2]), "l3_diff")
    assert (u.union_value, u.part_values, u.holds) == (10, (2, 2), True)
    u = union_triangle_check([S([1, 2]), S([3])], mode="l4_mult_energy")
    assert (u.union_value, u.part_values) == (15, (6, 1))
    assert u.to_check().verdict
    with pytest.raises(DomainError):
        union_triangle_check([S([1, 2]), S([2])], S([1]))


@given(st.lists(nonzero_sets(min_size=1, max_size=4), min_size=1, max_size=4),
       nonzero_sets(min_size=1, max_size=4), st.sampled_from(["l3_diff", "l3_quot", "l4_mult_energy"]))
def test_union_inequalities_hold(parts, B, mode):
    seen, disjoint = set(), []
    for p in parts:
        p = p.minus(S(seen))
        seen.update(p)
        disjoint.append(p)
    assert union_triangle_check(disjoint, B, mode).holds


def _check_cover(cert, A):
    n = len(A)
    assert cert.X | cert.Y == A
    assert 2 * len(cert.X) >= n and 2 * len(cert.Y) >= n
    covered = FiniteSet()
    for p in cert.pieces:
        assert p and p.isdisjoint(covered)
        covered = covered | p
    assert cert.K <= -(-n // 2)
    assert all(c.verdict for c in cert.all_checks())


@settings(max_examples=25)
@given(nonzero_sets(min_size=1, max_size=14))
def test_main_decomposition(A):
    cert = decompose(A, "main")
    _check_cover(cert, A)
    revalidate(cert)


@settings(max_examples=25)
@given(nonzero_sets(min_size=1, max_size=14))
def test_fourth_decomposition(A):
    cert = decompose(A, "fourth")
    _check_cover(cert, A)
    assert cert.bounds["E_times_Y"] == multiplicative_energy(cert.Y)
    revalidate(cert)


@settings(max_examples=25)
@given(nonzero_sets(min_size=1, max_size=14))
def test_partition_decomposition(A):
    cert = decompose(A, "partition")
    assert cert.B | cert.C == A and cert.B.isdisjoint(cert.C)
    assert cert.K <= ceil_log2(len(A)) + 1
    assert sum(len(p) for p in cert.pieces) == len(A)
    revalidate(cert)


def test_decomposition_round_trip():
    A = S([1, 2, 3, 4, 6, 8, 9, 12])
    for mode in ("main", "partition", "fourth"):
        cert = decompose(A, mode)
        d = json.loads(to_json(cert))
        back = DecompositionCertificate.from_dict(d)
        assert json.loads(to_json(back)) == d
        revalidate(back)


def test_revalidate_catches_tampering():
    cert = decompose(S([1, 2, 3, 4, 6, 8]), "main")
    cert.steps[0].q += 1
    with pytest.raises(InvariantViolation):
        revalidate(cert)


def test_decompose_domain():
    with pytest.raises(DomainError):
        decompose(S([0, 1, 2]), "main")
    with pytest.raises(ValueError):
        decompose(S([1, 2]), "sideways")


def test_ceil_log2():
    assert [ceil_log2(n) for n in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
