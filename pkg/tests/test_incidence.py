from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import incidences as oracle_incidences
from sumprod.core_sets import FiniteSet
from sumprod.errors import DomainError, ResourceLimitError
from sumprod.incidence import (Line, LineSet, PointSet, ProductPointSet, affine_image,
                               brute_force_incidences, count_incidences, dstar_config,
                               elekes_config, random_config, st_bound, st_bound_holds)
from sumprod.structure_stats import product_witness

S = FiniteSet
F = Fraction


def test_small_example():
    P = PointSet([(0, 0), (0, 1), (1, 0), (1, 1)])
    L = LineSet([(1, 0), (-1, 1)])
    assert count_incidences(P, L) == 4
    assert st_bound(4, 2) == 34


def test_vertical_lines_and_duplicates():
    P = PointSet([(1, 1), (1, 2), (1, 2), (2, 5)])
    assert len(P) == 3
    L = LineSet([Line(None, F(1)), Line(None, F(1)), Line(F(3), F(-1))])
    assert len(L) == 2
    assert count_incidences(P, L) == 4 == brute_force_incidences(P, L)


def test_cap():
    P = PointSet((i, 0) for i in range(10))
    L = LineSet((F(k), F(0)) for k in range(10))
    with pytest.raises(ResourceLimitError):
        count_incidences(P, L, cap=99)


coord = st.fractions(min_value=-4, max_value=4, max_denominator=3)
points = st.lists(st.tuples(coord, coord), max_size=25)
lines = st.lists(st.tuples(st.one_of(st.none(), coord), coord), max_size=25)


@given(points, lines)
def test_count_matches_oracle(pts, lns):
    P, L = PointSet(pts), LineSet(lns)
    c = count_incidences(P, L)
    assert c == brute_force_incidences(P, L)
    assert c == oracle_incidences(list(P), [(ln.slope, ln.intercept) for ln in L])
    assert st_bound_holds(c, len(P), len(L))


@given(points, lines, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
       st.integers(-3, 3), coord, coord)
def test_affine_invariance(pts, lns, a, b, c, d, v1, v2):
    if a * d == b * c:
        return
    P, L = PointSet(pts), LineSet(lns)
    P2, L2 = affine_image(P, L, [[a, b], [c, d]], [v1, v2])
    assert count_incidences(P2, L2) == count_incidences(P, L)


@given(st.integers(0, 300), st.integers(0, 300))
def test_st_bound_floor(p, l):
    b = st_bound(p, l)
    assert st_bound_holds(b, p, l) and not st_bound_holds(b + 1, p, l)


def test_product_point_set():
    G = ProductPointSet([1, 2], [3, 4, 4])
    assert len(G) == 4 and G == PointSet([(1, 3), (2, 3), (1, 4), (2, 4)])
    assert count_incidences(G, LineSet([(1, 2)])) == 2


def test_elekes_examples():
    c = elekes_config(S([1, 2]))
    assert (len(c.points), len(c.lines), c.count, c.floor) == (9, 4, 8, 8)
    c = elekes_config(S([1]))
    assert (len(c.points), len(c.lines), c.count) == (1, 1, 1)
    c = elekes_config(S([1, 2, 3]))
    assert c.count >= 3 * len(c.lines) and c.passed
    with pytest.raises(DomainError):
        elekes_config(S([0, 1]))


def test_dstar_example():
    A = S([1, 2])
    w = product_witness(A, S([1, 2]), "D_times")
    c = dstar_config(w.Q, w.R, A, A, 1, w.t)
    assert c.count == 8 and c.floor == 6 and c.passed
    with pytest.raises(DomainError):
        dstar_config(S([1]), S([1]), A, A, 1, 2)


@given(st.integers(0, 2**64 - 1), st.integers(1, 40), st.integers(1, 40))
def test_random_config_bound(seed, n, m):
    c = random_config(n, m, seed)
    assert c.count == brute_force_incidences(c.points, c.lines) and c.passed
