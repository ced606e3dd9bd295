"""Exact comparisons between sums of k-th roots of nonnegative integers.

``roots_sum_ge(terms, c, k)`` decides ``sum_j terms[j]**(1/k) >= c**(1/k)``
without floating point.  Each term is split as ``m**k * f`` with ``f``
k-th-power-free; k-th roots of distinct k-th-power-free integers are
linearly independent over the rationals, so equality can only happen when
every term shares the radical of ``c``, which is decided by integer
comparison.  All other cases are strict and are settled by refining
dyadic enclosures until they separate.
"""
from __future__ import annotations


def iroot(n: int, k: int) -> int:
    """``floor(n ** (1/k))`` for ``n >= 0``."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)  # >= the true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def power_free_split(n: int, k: int):
    """``(m, f)`` with ``n = m**k * f`` and ``f`` k-th-power-free (``n >= 1``)."""
    m, f, rem, p = 1, 1, n, 2
    while p**k <= rem:
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            m *= p ** (e // k)
            f *= p ** (e % k)
        p += 1 if p == 2 else 2
    return m, f * rem


def roots_sum_ge(terms, c: int, k: int) -> bool:
    terms = [t for t in terms if t]
    if any(t < 0 for t in terms) or c < 0:
        raise ValueError("radicands must be nonnegative")
    if c == 0:
        return True
    if not terms:
        return False
    mc, fc = power_free_split(c, k)
    coeff = {}
    for t in terms:
        m, f = power_free_split(t, k)
        coeff[f] = coeff.get(f, 0) + m
    if set(coeff) == {fc}:
        return coeff[fc] >= mc
    bits = 8
    while True:
        scale = k * bits
        lo = sum(iroot(t << scale, k) for t in terms)
        hi = lo + len(terms)
        c_lo = iroot(c << scale, k)
        if lo > c_lo:           # lo >= c_lo + 1 > c^(1/k) 2^bits
            return True
        if hi <= c_lo:          # sum <= hi / 2^bits <= c^(1/k); equality excluded above
            return False
        bits *= 2

