"""Pair-counting kernels shared by the set algebra and the energy code.

Every kernel works on integer encodings of the two sets (elements scaled to a
common denominator), so the inner loops never touch ``Fraction``.  Three
interchangeable counting strategies exist:

* ``hash``  -- ``collections.Counter`` keyed by the integer encoding,
* ``sort``  -- sort the keys and run-length encode them (sort-merge),
* ``numpy`` -- ``np.unique`` on int64 keys, only when the encoding fits.

``auto`` picks ``numpy`` when it is safe and ``hash`` otherwise.  All three
must agree exactly; the test-suite checks this differentially.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import groupby
from math import gcd

import numpy as np

OPS = ("sum", "diff", "prod", "quot")
METHODS = ("auto", "hash", "sort", "numpy")

# int64 keys are built from values below these magnitudes.
_ADD_LIMIT = 2**61
_MUL_LIMIT = 2**31


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def encode_pair(A, B, op):
    """Return ``(xs, ys, decode_info)`` integer encodings for ``A op B``."""
    la, pa = A.scaled()
    lb, pb = B.scaled()
    if op in ("sum", "diff"):
        L = _lcm(la, lb)
        ma, mb = L // la, L // lb
        return [p * ma for p in pa], [p * mb for p in pb], L
    if op == "prod":
        return list(pa), list(pb), la * lb
    if op == "quot":
        return [p * lb for p in pa], [p * la for p in pb], None
    raise ValueError(f"unknown op {op!r}")


def _max_abs(xs):
    return max((abs(x) for x in xs), default=0)


def _numpy_ok(xs, ys, op):
    limit = _ADD_LIMIT if op in ("sum", "diff") else _MUL_LIMIT
    return _max_abs(xs) < limit and _max_abs(ys) < limit


def _py_keys(xs, ys, op):
    if op == "sum":
        return (x + y for x in xs for y in ys)
    if op == "diff":
        return (x - y for x in xs for y in ys)
    if op == "prod":
        return (x * y for x in xs for y in ys)
    return (_ratio_key(x, y) for x in xs for y in ys)


def _ratio_key(u, v):
    g = gcd(u, v)
    if v < 0:
        g = -g
    return (u // g, v // g)


def _np_keys(xs, ys, op):
    a = np.asarray(xs, dtype=np.int64)
    b = np.asarray(ys, dtype=np.int64)
    if op == "sum":
        return np.add.outer(a, b).ravel()
    if op == "diff":
        return np.subtract.outer(a, b).ravel()
    if op == "prod":
        return np.multiply.outer(a, b).ravel()
    u = np.repeat(a, len(b))
    v = np.tile(b, len(a))
    g = np.gcd(u, v)
    g = np.where(v < 0, -g, g)
    u //= g
    v //= g
    # |u| < 2**31 and 0 < v < 2**31, so this packing is injective.
    return u * (1 << 32) + v


def _decode_np_key(k, op, info):
    k = int(k)
    if op == "quot":
        u, v = divmod(k, 1 << 32)
        return Fraction(u, v)
    return Fraction(k, info)


def _decode_py_key(k, op, info):
    if op == "quot":
        return Fraction(*k)
    # Fraction(int) skips the gcd, which dominates for large integers
    return Fraction(k) if info == 1 else Fraction(k, info)


def _resolve(method, xs, ys, op):
    if method not in METHODS:
        raise ValueError(f"unknown counting method {method!r}")
    if method == "auto":
        return "numpy" if _numpy_ok(xs, ys, op) else "hash"
    if method == "numpy" and not _numpy_ok(xs, ys, op):
        return "hash"
    return method


def count_pairs(A, B, op, method="auto"):
    """Exact histogram ``{value: #pairs}`` of ``a op b`` over ``A x B``."""
    xs, ys, info = encode_pair(A, B, op)
    if not xs or not ys:
        return {}
    method = _resolve(method, xs, ys, op)
    if method == "numpy":
        keys, counts = np.unique(_np_keys(xs, ys, op), return_counts=True)
        return {_decode_np_key(k, op, info): int(c) for k, c in zip(keys, counts)}
    if method == "hash":
        table = Counter(_py_keys(xs, ys, op))
        return {_decode_py_key(k, op, info): c for k, c in table.items()}
    out = {}
    for k, run in groupby(sorted(_py_keys(xs, ys, op))):
        out[_decode_py_key(k, op, info)] = sum(1 for _ in run)
    return out


def multiplicities(A, B, op, method="auto"):
    """The multiset of histogram counts only (keys are never decoded)."""
    xs, ys, _ = encode_pair(A, B, op)
    if not xs or not ys:
        return []
    method = _resolve(method, xs, ys, op)
    if method == "numpy":
        _, counts = np.unique(_np_keys(xs, ys, op), return_counts=True)
        return counts.tolist()
    if method == "hash":
        return list(Counter(_py_keys(xs, ys, op)).values())
    return [sum(1 for _ in run) for _, run in groupby(sorted(_py_keys(xs, ys, op)))]


def moment(counts, m):
    """``sum(c**m)`` in exact integer arithmetic."""
    return sum(v**m * k for v, k in Counter(counts).items())


def distinct_values(A, B, op):
    """Sorted tuple of the distinct values of ``a op b``."""
    xs, ys, info = encode_pair(A, B, op)
    if not xs or not ys:
        return ()
    if _numpy_ok(xs, ys, op):
        keys = np.unique(_np_keys(xs, ys, op))
        vals = [_decode_np_key(k, op, info) for k in keys]
    elif op == "quot":
        vals = [_decode_py_key(k, op, info) for k in set(_py_keys(xs, ys, op))]
    else:
        # keys are value * info with info > 0, so integer order is value order
        return tuple(_decode_py_key(k, op, info) for k in sorted(set(_py_keys(xs, ys, op))))
    if op == "quot":
        vals.sort()
    return tuple(vals)


def _encode_targets(targets, op, info):
    """Integer keys of ``targets`` in the key space of ``encode_pair``; unmatchable values dropped."""
    out = []
    for x in targets:
        if op == "quot":
            out.append((x.numerator, x.denominator))
        else:
            k = x * info
            if k.denominator == 1:
                out.append(k.numerator)
    return out


def membership_counts(A, B, op, targets):
    """For each ``a`` in ``A`` (in order): ``#{b in B : a op b in targets}``."""
    xs, ys, info = encode_pair(A, B, op)
    if not xs:
        return []
    if not ys or not targets:
        return [0] * len(xs)
    tkeys = _encode_targets(targets, op, info)
    if _numpy_ok(xs, ys, op):
        keys = _np_keys(xs, ys, op).reshape(len(xs), len(ys))
        if op == "quot":
            tk = [u * (1 << 32) + v for u, v in tkeys if abs(u) < 2**31 and v < 2**32]
        else:
            tk = [k for k in tkeys if abs(k) < 2**63]
        hit = np.isin(keys, np.asarray(tk, dtype=np.int64))
        return hit.sum(axis=1).tolist()
    tset = set(tkeys)
    if op == "quot":
        return [sum(1 for y in ys if _ratio_key(x, y) in tset) for x in xs]
    if op == "diff":
        return [sum(1 for y in ys if x - y in tset) for x in xs]
    if op == "sum":
        return [sum(1 for y in ys if x + y in tset) for x in xs]
    return [sum(1 for y in ys if x * y in tset) for x in xs]
