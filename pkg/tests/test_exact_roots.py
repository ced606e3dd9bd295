from hypothesis import given, strategies as st

from sumprod.exact_roots import iroot, power_free_split, roots_sum_ge


@given(st.integers(0, 10**40), st.integers(2, 5))
def test_iroot(n, k):
    r = iroot(n, k)
    assert r**k <= n < (r + 1) ** k


@given(st.integers(1, 10**9), st.integers(2, 4))
def test_power_free_split(n, k):
    m, f = power_free_split(n, k)
    assert m**k * f == n
    assert all(f % (p**k) for p in range(2, 200))


def test_roots_sum_examples():
    assert roots_sum_ge([2, 2], 10, 3)                  # 2 * 2^(1/3) >= 10^(1/3)
    assert roots_sum_ge([6, 1], 15, 4)
    assert roots_sum_ge([8], 8, 3)                       # equality
    assert roots_sum_ge([2, 16], 54, 3)                  # 2^(1/3) + 2*2^(1/3) = 3*2^(1/3)
    assert not roots_sum_ge([2, 16], 55, 3)
    assert not roots_sum_ge([1, 1], 9, 3)


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=4), st.integers(0, 10**7),
       st.integers(3, 4))
def test_roots_sum_matches_high_precision(terms, c, k):
    from decimal import Decimal, getcontext
    getcontext().prec = 80
    lhs = sum(Decimal(t) ** (Decimal(1) / k) for t in terms)
    rhs = Decimal(c) ** (Decimal(1) / k)
    if abs(lhs - rhs) > Decimal(10) ** -40:
        assert roots_sum_ge(terms, c, k) == (lhs > rhs)
