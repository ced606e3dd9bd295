"""Brute-force reference implementations, independent of the package kernels.

Everything here is plain nested loops over ``Fraction`` values.
"""
from collections import Counter
from fractions import Fraction
from itertools import product


def F(xs):
    return [Fraction(x) for x in xs]


def rep(A, B, op):
    c = Counter()
    for a in A:
        for b in B:
            c[Fraction(a) - b if op == "diff" else Fraction(a) / b] += 1
    return dict(c)


def energy(A, B, op, m):
    return sum(v**m for v in rep(A, B, op).values())


def quadruples_diff(A):
    """#{(a,b,c,d) : a - b = c - d}."""
    return sum(1 for a, b, c, d in product(A, repeat=4) if a - b == c - d)


def sumset_size(A, B, op):
    out = set()
    for a in A:
        for b in B:
            a, b = Fraction(a), Fraction(b)
            if op == "sum":
                out.add(a + b)
            elif op == "diff":
                out.add(a - b)
            elif op == "prod":
                out.add(a * b)
            else:
                out.add(a / b)
    return len(out)


def sigma(A, B, C):
    """max over planes through the origin with fully nonzero normal of #grid points on them.

    Planes through two independent grid points, plus sampled normals of
    planes through the line spanned by a single grid point.
    """
    pts = [tuple(map(Fraction, p)) for p in product(A, B, C)]
    best = 0

    def on(n):
        return sum(1 for p in pts if n[0] * p[0] + n[1] * p[1] + n[2] * p[2] == 0)

    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            n = (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])
            if all(n):
                best = max(best, on(n))
        # planes containing the line through p: fix two normal entries, solve the third
        for k in range(3):
            if p[k] == 0 and any(p):
                continue
            for s in (1, 2, 3, -1, -2):
                for t in (1, 2, 3, -1, -2):
                    n = [Fraction(s), Fraction(t)]
                    n.insert(k, Fraction(1) if not any(p) else
                             -sum(c * x for c, x in zip(n, p[:k] + p[k + 1:])) / p[k])
                    if all(n):
                        best = max(best, on(n))
    return best


def linear_solutions(A, B, C, s1, s2, s3):
    return sum(1 for a, b, c in product(A, B, C) if s1 * a + s2 * b + s3 * c == 0)


def ratio_solutions(P, B):
    """Direct 8-fold count of (p+b)/(q+c) = (p'+b')/(q'+c'), denominators nonzero."""
    P, B = F(P), F(B)
    total = 0
    quads = [(p + b, q + c) for p, b, q, c in product(P, B, P, B) if q + c != 0]
    for n1, d1 in quads:
        for n2, d2 in quads:
            if n1 * d2 == n2 * d1:
                total += 1
    return total


def incidences(points, lines):
    """Lines as (slope, intercept) or (None, x0)."""
    total = 0
    for x, y in points:
        for m, c in lines:
            if (m is None and x == c) or (m is not None and y == m * x + c):
                total += 1
    return total


def splitmix64(seed, k):
    mask = (1 << 64) - 1
    s = seed
    out = []
    for _ in range(k):
        s = (s + 0x9E3779B97F4A7C15) & mask
        z = s
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        out.append(z ^ (z >> 31))
    return out
