"""Representation functions, energy moments, the trilinear count sigma and
the popular-quotient spectrum.

Conventions: ``r_{A-B}(x) = #{(a, b) : a - b = x}`` and
``r_{A/B}(x) = #{(a, b) : a = x b}``.  The additive energy of moment ``m`` is
``sum_x r_{A-B}(x)**m``; the multiplicative one uses ``r_{A/B}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import _kernels
from .core_sets import FiniteSet, combine, popular_slice, to_rational
from .errors import DivisorZeroError, DomainError, InvariantViolation, ResourceLimitError

HIST_OPS = ("diff", "quot")
SIGMA_CAP = 12**3


@dataclass(frozen=True)
class RepHistogram:
    op: str
    counts: dict
    source_sizes: tuple

    def total(self) -> int:
        return sum(self.counts.values())

    def moment(self, m: int) -> int:
        return _kernels.moment(self.counts.values(), m)

    def max(self) -> int:
        return max(self.counts.values(), default=0)

    def support(self) -> FiniteSet:
        return FiniteSet._trusted(tuple(sorted(self.counts)))

    def __getitem__(self, x) -> int:
        return self.counts.get(to_rational(x), 0)

    def tail(self, tau: int) -> int:
        return sum(1 for c in self.counts.values() if c >= tau)

    def level_set(self, lo: int, hi: int) -> FiniteSet:
        """Keys with ``lo <= r(x) < hi``."""
        return FiniteSet._trusted(tuple(sorted(x for x, c in self.counts.items() if lo <= c < hi)))


@dataclass(frozen=True)
class EnergyValue:
    moment: int
    value: int

    def __int__(self):
        return self.value


def _check_hist_args(A, B, op):
    if op not in HIST_OPS:
        raise ValueError(f"op must be 'diff' or 'quot', got {op!r}")
    if not A or not B:
        raise DomainError("representation functions need nonempty sets")
    if op == "quot" and B.has_zero:
        raise DivisorZeroError("r_{A/B} with 0 in B")


def rep_histogram(A: FiniteSet, B: FiniteSet, op: str = "diff", method: str = "auto") -> RepHistogram:
    _check_hist_args(A, B, op)
    return RepHistogram(op, _kernels.count_pairs(A, B, op, method), (len(A), len(B)))


def rep_multiplicities(A: FiniteSet, B: FiniteSet, op: str = "diff", method: str = "auto") -> list:
    _check_hist_args(A, B, op)
    return _kernels.multiplicities(A, B, op, method)


def energy(A: FiniteSet, B: FiniteSet, op: str = "diff", moment: int = 2) -> EnergyValue:
    if moment not in (1, 2, 3, 4):
        raise ValueError("moment must be 1, 2, 3 or 4")
    return EnergyValue(moment, _kernels.moment(rep_multiplicities(A, B, op), moment))


def additive_energy(A: FiniteSet, B: FiniteSet | None = None, moment: int = 2) -> int:
    return energy(A, A if B is None else B, "diff", moment).value


def multiplicative_energy(A: FiniteSet, B: FiniteSet | None = None, moment: int = 2) -> int:
    return energy(A, A if B is None else B, "quot", moment).value


def energy_moments(A: FiniteSet, B: FiniteSet, op: str) -> dict:
    """All four moments from one histogram pass: ``{1: .., 2: .., 3: .., 4: ..}``."""
    counts = rep_multiplicities(A, B, op)
    return {m: _kernels.moment(counts, m) for m in (1, 2, 3, 4)}


# -- dyadic pigeonholing -----------------------------------------------------

def dyadic_level(count: int) -> int:
    """Bucket index k with ``2**k <= count < 2**(k+1)``."""
    return count.bit_length() - 1


def dyadic_buckets(counts: dict) -> dict:
    """``{t: [keys with t <= count < 2t]}`` for every nonempty dyadic band ``t = 2**k``."""
    out = {}
    for key, c in counts.items():
        if c >= 1:
            out.setdefault(1 << dyadic_level(c), []).append(key)
    return dict(sorted(out.items()))


def best_bucket(buckets: dict, weight) -> int:
    """The band ``t`` maximizing ``weight(t, keys)``; ties go to the smallest ``t``."""
    best_t, best_w = None, None
    for t, keys in buckets.items():
        w = weight(t, keys)
        if best_w is None or w > best_w:
            best_t, best_w = t, w
    return best_t


def pigeonhole_holds(selected: int, total: int, n_buckets: int, moment: int) -> bool:
    """Exact dyadic guarantee ``selected * 2**moment * n_buckets >= total``.

    Within a band ``t <= r < 2t`` one has ``r**m < 2**m t**m``, and the
    heaviest band carries at least ``total / n_buckets``.
    """
    return selected * (1 << moment) * n_buckets >= total


# -- sigma(A, B, C) ----------------------------------------------------------

@dataclass(frozen=True)
class SigmaWitness:
    sigma1: Fraction
    sigma2: Fraction
    sigma3: Fraction
    count: int
    triples: tuple | None = None

    @property
    def coefficients(self):
        return (self.sigma1, self.sigma2, self.sigma3)


def count_linear_solutions(A, B, C, s1, s2, s3, keep=False):
    """``#{(a,b,c) : s1 a + s2 b + s3 c = 0}`` by direct enumeration."""
    s1, s2, s3 = (to_rational(s) for s in (s1, s2, s3))
    cset = {c: None for c in C}
    found = []
    n = 0
    for a in A:
        for b in B:
            c = -(s1 * a + s2 * b) / s3
            if c in cset:
                n += 1
                if keep:
                    found.append((a, b, c))
    return (n, tuple(found)) if keep else n


def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def _normalize(n):
    g = gcd(gcd(n[0], n[1]), n[2])
    if n[0] < 0 or (n[0] == 0 and (n[1] < 0 or (n[1] == 0 and n[2] < 0))):
        g = -g
    return (n[0] // g, n[1] // g, n[2] // g)


def _line_normal(v):
    """An integer normal with no zero entry orthogonal to ``v`` (>= 2 nonzero entries)."""
    v1, v2, v3 = v
    if v3 != 0:
        for s in (1, 2):
            w = v1 + s * v2
            if w != 0:
                return _normalize((v3, s * v3, -w))
    return _normalize((v2, -v1, 1))


def _plane_counts_python(p, others):
    """For the pivot ``p``: (best normal, #others on it, #others parallel to p).

    The best normal is the lexicographically smallest among those with the
    most points; ``(None, 0, parallel)`` if no plane has a fully nonzero normal.
    """
    table = {}
    parallel = 0
    for q in others:
        n = _cross(p, q)
        if n == (0, 0, 0):
            parallel += 1
            continue
        if n[0] and n[1] and n[2]:
            key = _normalize(n)
            table[key] = table.get(key, 0) + 1
    if not table:
        return None, 0, parallel
    key = min(table, key=lambda k: (-table[k], k))
    return key, table[key], parallel


def _plane_counts_numpy(p, others_arr):
    q = others_arr
    n = np.stack([p[1] * q[:, 2] - p[2] * q[:, 1],
                  p[2] * q[:, 0] - p[0] * q[:, 2],
                  p[0] * q[:, 1] - p[1] * q[:, 0]], axis=1)
    zero = ~n.any(axis=1)
    parallel = int(zero.sum())
    full = n[(n != 0).all(axis=1)]
    if len(full) == 0:
        return None, 0, parallel
    g = np.gcd.reduce(np.abs(full), axis=1)
    g = np.where(full[:, 0] < 0, -g, g)
    full = full // g[:, None]
    off = int(np.abs(full).max())
    K = 2 * off + 1
    if K**3 < 2**62:
        # order-preserving packing of the rows into one int64 key
        packed = ((full[:, 0] + off) * K + (full[:, 1] + off)) * K + (full[:, 2] + off)
        keys, counts = np.unique(packed, return_counts=True)
        i = int(np.argmax(counts))  # first maximum = smallest key
        r, c = divmod(int(keys[i]), K)
        a, b = divmod(r, K)
        return (a - off, b - off, c - off), int(counts[i]), parallel
    keys, counts = np.unique(full, axis=0, return_counts=True)
    i = int(np.argmax(counts))
    return tuple(int(x) for x in keys[i]), int(counts[i]), parallel


def sigma_sup(A: FiniteSet, B: FiniteSet, C: FiniteSet, cap: int = SIGMA_CAP,
              keep_triples: bool = False, method: str = "auto") -> SigmaWitness:
    """Exact ``max_{s1,s2,s3 != 0} #{(a,b,c) : s1 a + s2 b + s3 c = 0}``.

    Solutions for a normal ``n`` are the grid points of ``A x B x C`` on the
    plane ``n . p = 0``.  If those points span the plane, ``n`` is the cross
    product of two of them, so enumerating cross products with nonzero
    entries covers every such case.  Otherwise all solutions lie on one line
    through the origin, handled by an explicit normal for each line.
    Coordinates are integer-scaled per factor, which maps normals bijectively
    and preserves which entries vanish.
    """
    if not (A and B and C):
        raise DomainError("sigma needs nonempty sets")
    size = len(A) * len(B) * len(C)
    if size > cap:
        raise ResourceLimitError(f"sigma grid {size} exceeds cap {cap}")
    (la, pa), (lb, pb), (lc, pc) = A.scaled(), B.scaled(), C.scaled()
    pts = [(x, y, z) for x in pa for y in pb for z in pc]
    origin = 1 if (0, 0, 0) in pts else 0
    nonzero = [p for p in pts if p != (0, 0, 0)]
    bound = max((abs(c) for p in nonzero for c in p), default=0)
    use_numpy = method == "numpy" or (method == "auto" and bound < 2**30)
    if use_numpy:
        arr = np.asarray(nonzero, dtype=np.int64).reshape(-1, 3)

    best_count, best_normal = -1, None
    for i, p in enumerate(nonzero):
        if use_numpy:
            others = np.delete(arr, i, axis=0)
            key, on_plane, parallel = _plane_counts_numpy(p, others)
        else:
            key, on_plane, parallel = _plane_counts_python(p, nonzero[:i] + nonzero[i + 1:])
        base = 1 + parallel + origin
        if key is not None and base + on_plane > best_count:
            best_count, best_normal = base + on_plane, key
        if sum(1 for x in p if x) >= 2 and base > best_count:
            best_count, best_normal = base, _line_normal(p)
    if best_normal is None:
        best_normal = (1, 1, 1)

    n1, n2, n3 = best_normal
    s1 = Fraction(1)
    s2 = Fraction(n2 * lb, n1 * la)
    s3 = Fraction(n3 * lc, n1 * la)
    count, triples = count_linear_solutions(A, B, C, s1, s2, s3, keep=True)
    if best_count >= 0 and count != best_count:
        raise InvariantViolation(f"sigma witness recount {count} != candidate count {best_count}")
    return SigmaWitness(s1, s2, s3, count, triples if keep_triples else None)


# -- popular quotients -------------------------------------------------------

@dataclass(frozen=True)
class PopularSpectrum:
    source: FiniteSet
    levels: tuple          # ((t, S_t), ...) in increasing t
    best_t: int
    best_mass: int         # |S_t| t^2 at best_t
    energy: int            # multiplicative energy of source
    guarantee_holds: bool

    def level(self, t: int) -> FiniteSet:
        for tt, s in self.levels:
            if tt == t:
                return s
        return FiniteSet()


def popular_spectrum(A: FiniteSet) -> PopularSpectrum:
    if not A:
        raise DomainError("popular spectrum of the empty set")
    if A.has_zero:
        raise DomainError("popular spectrum needs 0 not in A")
    hist = rep_histogram(A, A, "quot")
    buckets = dyadic_buckets(hist.counts)
    levels = tuple((t, FiniteSet._trusted(tuple(sorted(keys)))) for t, keys in buckets.items())
    best_t = best_bucket(buckets, lambda t, keys: len(keys) * t * t)
    best_mass = len(buckets[best_t]) * best_t**2
    E = hist.moment(2)
    ok = pigeonhole_holds(best_mass, E, len(buckets), 2)
    if not ok:
        raise InvariantViolation("dyadic pigeonhole failed on the quotient spectrum")
    return PopularSpectrum(A, levels, best_t, best_mass, E, ok)


@dataclass(frozen=True)
class KatzKoesterResult:
    holds: bool
    lam: Fraction
    slice: FiniteSet
    violation: Fraction | None = None


def katz_koester_check(A: FiniteSet, lam, AA: FiniteSet | None = None) -> KatzKoesterResult:
    """Verify ``A_λ A_λ ⊆ AA ∩ λ AA`` for ``A_λ = A ∩ λA`` (``AA`` may be passed in precomputed)."""
    lam = to_rational(lam)
    if A.has_zero:
        raise DomainError("Katz-Koester check needs 0 not in A")
    if lam == 0 or not A:
        raise DomainError("λ must be a nonzero element of A/A")
    sl = popular_slice(A, lam)
    if not sl:
        raise DomainError(f"λ = {lam} is not in A/A")
    lhs = combine(sl, sl, "prod")
    if AA is None:
        AA = combine(A, A, "prod")
    for x in lhs:
        if x not in AA or (x / lam) not in AA:
            return KatzKoesterResult(False, lam, sl, x)
    return KatzKoesterResult(True, lam, sl, None)


def katz_koester_all(A: FiniteSet) -> list:
    """The inclusion for every ``λ ∈ A/A``; returns the failing results.

    All slices come from one pass over ``A x A``: ``A_λ`` is the set of
    numerators ``a`` with ``a = λ b``.
    """
    if A.has_zero:
        raise DomainError("Katz-Koester check needs 0 not in A")
    slices = {}
    for a in A:
        for b in A:
            slices.setdefault(a / b, []).append(a)
    AA = set(combine(A, A, "prod"))
    bad = []
    for lam in sorted(slices):
        sl = slices[lam]
        for i, x in enumerate(sl):
            for y in sl[i:]:
                p = x * y
                if p not in AA or p / lam not in AA:
                    bad.append(KatzKoesterResult(False, lam, FiniteSet(sl), p))
                    break
            else:
                continue
            break
    return bad
