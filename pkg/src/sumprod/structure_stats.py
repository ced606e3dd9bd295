"""Certified one-sided bounds for the supremum statistics d+, dx, d4+ and the
covering statistics D+, Dx, plus the Chebyshev tail and per-coefficient
Hoelder checks.

``d_kind(A) = sup_B E_m(A, B) / (|A| |B|^(m-1))`` with ``m = 3`` for d+ / dx
and ``m = 4`` for d4+.  Any single witness ``B`` gives a valid lower bound;
``d_lower`` searches a fixed, versioned pool of witnesses.

``D_kind(A)`` is an infimum of ``|Q|^2 |R|^2 / (|A| t^3)`` over coverings of
``A`` by t-popular differences (quotients) of ``Q`` and ``R``; every valid
witness is an upper bound.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .core_sets import (FiniteSet, combine, dilate, inverse_set, popular_slice, to_rational,
                        translate)
from .energy import SIGMA_CAP, count_linear_solutions, energy, rep_histogram, rep_multiplicities
from . import _kernels
from .errors import ConfigError, DomainError, InvalidWitnessError, InvariantViolation
from .errors import ResourceLimitError
from .report import Report, le_check, soft

KINDS = {"d_plus": ("diff", 3), "d_times": ("quot", 3), "d4_plus": ("diff", 4)}
D_KINDS = {"D_plus": "diff", "D_times": "quot"}


@dataclass(frozen=True)
class PoolConfig:
    """Witness pool for the d-statistics.  Bump ``version`` on any change."""

    version: str = "1"
    include_self: bool = True
    include_reflection: bool = True      # -A (additive) or A^{-1} (multiplicative)
    truncation_factors: tuple = (1, 2)   # most popular k|A| elements of A-A or A/A
    include_level_sets: bool = True      # dyadic level sets of r_{A-A} or r_{A/A}
    slice_count: int = 3                 # A ∩ (A+x) or A ∩ xA for the most popular x
    include_singleton: bool = True
    max_witness_factor: int = 4          # skip witnesses larger than factor * |A|

    def to_dict(self):
        d = asdict(self)
        d["truncation_factors"] = list(self.truncation_factors)
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if "truncation_factors" in d:
            d["truncation_factors"] = tuple(d["truncation_factors"])
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(f"bad pool config: {exc}") from None


DEFAULT_POOL = PoolConfig()


@dataclass(frozen=True)
class DLowerBound:
    kind: str
    value: Fraction
    witness: FiniteSet
    moment_value: int
    size_a: int
    size_b: int
    label: str = ""

    def recompute(self) -> Fraction:
        m = KINDS[self.kind][1]
        return Fraction(self.moment_value, self.size_a * self.size_b ** (m - 1))

    def to_dict(self):
        return {"kind": self.kind, "value": self.value, "witness": self.witness,
                "label": self.label,
                "trace": {"moment": self.moment_value, "size_a": self.size_a,
                          "size_b": self.size_b}}


def _check_kind(A, kind):
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {sorted(KINDS)}")
    if not A:
        raise DomainError("d-statistics need a nonempty set")
    if kind == "d_times" and A.has_zero:
        raise DomainError("multiplicative statistics need 0 not in A")


def d_bound(A: FiniteSet, B: FiniteSet, kind: str, label: str = "") -> DLowerBound:
    """The lower bound for ``kind`` certified by the single witness ``B``."""
    _check_kind(A, kind)
    op, m = KINDS[kind]
    if op == "quot" and B.has_zero:
        raise DomainError("multiplicative witness must not contain 0")
    E = energy(A, B, op, m).value
    value = Fraction(E, len(A) * len(B) ** (m - 1))
    return DLowerBound(kind, value, B, E, len(A), len(B), label)


def witness_pool(A: FiniteSet, kind: str, pool: PoolConfig = DEFAULT_POOL):
    """Deterministic list of ``(label, B)`` candidate witnesses."""
    _check_kind(A, kind)
    op = KINDS[kind][0]
    limit = max(1, pool.max_witness_factor * len(A))
    out = []
    seen = set()

    def add(label, B):
        if B and len(B) <= limit and B not in seen and not (op == "quot" and B.has_zero):
            seen.add(B)
            out.append((label, B))

    if pool.include_self:
        add("self", A)
    if pool.include_reflection:
        add("reflection", -A if op == "diff" else inverse_set(A))
    need_hist = pool.truncation_factors or pool.include_level_sets or pool.slice_count
    if need_hist and len(A) > 1:
        hist = rep_histogram(A, A, op)
        by_pop = sorted(hist.counts.items(), key=lambda kv: (-kv[1], kv[0]))
        for f in pool.truncation_factors:
            k = f * len(A)
            add(f"popular_top_{k}", FiniteSet._trusted(tuple(sorted(x for x, _ in by_pop[:k]))))
        if pool.include_level_sets:
            t = 1
            while t <= hist.max():
                lvl = hist.level_set(t, 2 * t)
                add(f"level_{t}", lvl)
                t *= 2
        trivial = 0 if op == "diff" else 1
        taken = 0
        for x, _ in by_pop:
            if taken >= pool.slice_count:
                break
            if x == trivial:
                continue
            sl = A & translate(A, x) if op == "diff" else popular_slice(A, x)
            add(f"slice_{x}", sl)
            taken += 1
    if pool.include_singleton:
        add("singleton", FiniteSet([0 if op == "diff" else 1]))
    if not out:
        raise ConfigError("witness pool is empty")
    return out


def _better(a: DLowerBound, b: DLowerBound | None) -> bool:
    if b is None:
        return True
    if a.value != b.value:
        return a.value > b.value
    if a.size_b != b.size_b:
        return a.size_b < b.size_b
    return a.witness.elements < b.witness.elements


def d_lower(A: FiniteSet, kind: str, pool: PoolConfig = DEFAULT_POOL) -> DLowerBound:
    """Best certified lower bound for ``kind`` over the witness pool."""
    best = None
    for label, B in witness_pool(A, kind, pool):
        cand = d_bound(A, B, kind, label)
        if _better(cand, best):
            best = cand
    if not (1 <= best.value <= len(A)):
        raise InvariantViolation(f"{kind} bound {best.value} outside [1, |A|]")
    return best


# -- D-statistics ------------------------------------------------------------

@dataclass(frozen=True)
class DUpperWitness:
    kind: str
    Q: FiniteSet
    R: FiniteSet
    t: int

    def claimed_value(self, size_a: int) -> Fraction:
        return Fraction(len(self.Q) ** 2 * len(self.R) ** 2, size_a * self.t**3)

    def to_dict(self):
        return {"kind": self.kind, "Q": self.Q, "R": self.R, "t": self.t}

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], FiniteSet(d["Q"]), FiniteSet(d["R"]), int(d["t"]))


def validate_D_witness(A: FiniteSet, w: DUpperWitness) -> Fraction:
    """Check every covering constraint exactly; return ``|Q|^2|R|^2 / (|A| t^3)``."""
    if w.kind not in D_KINDS:
        raise InvalidWitnessError("kind", f"unknown kind {w.kind!r}")
    if not (A and w.Q and w.R):
        raise InvalidWitnessError("nonempty", "A, Q and R must be nonempty")
    op = D_KINDS[w.kind]
    if op == "quot" and w.R.has_zero:
        raise InvalidWitnessError("nonzero_R", "0 in R for a quotient covering")
    if w.t < 1:
        raise InvalidWitnessError("t_lower", f"t = {w.t} < 1")
    if len(w.R) > len(w.Q):
        raise InvalidWitnessError("R_le_Q", f"|R| = {len(w.R)} > |Q| = {len(w.Q)}")
    if w.t**2 * len(A) > len(w.Q) * len(w.R) ** 2:
        raise InvalidWitnessError(
            "t_upper", f"t^2 |A| = {w.t**2 * len(A)} > |Q||R|^2 = {len(w.Q) * len(w.R)**2}")
    # r_{Q/R}(a) = #{r : a r in Q}, r_{Q-R}(a) = #{r : a + r in Q}
    cover = _kernels.membership_counts(A, w.R, "prod" if op == "quot" else "sum", w.Q)
    for a, c in zip(A, cover):
        if c < w.t:
            raise InvalidWitnessError("covering", f"r({a}) = {c} < t = {w.t}")
    return w.claimed_value(len(A))


def product_witness(A: FiniteSet, B: FiniteSet, kind: str = "D_times") -> DUpperWitness:
    """``Q = AB, R = B, t = |B|`` (or ``Q = A+B`` additively): always valid."""
    if kind == "D_times":
        if B.has_zero:
            raise DomainError("0 in B")
        return DUpperWitness(kind, combine(A, B, "prod"), B, len(B))
    return DUpperWitness(kind, combine(A, B, "sum"), B, len(B))


def D_upper(A: FiniteSet, kind: str = "D_times", pool: PoolConfig = DEFAULT_POOL,
            extra=()):
    """Best validated product witness over a small pool; returns ``(value, witness, label)``."""
    if not A:
        raise DomainError("empty set")
    if kind == "D_times" and A.has_zero:
        raise DomainError("D_times needs 0 not in A")
    one = 1 if kind == "D_times" else 0
    cands = [("singleton", FiniteSet([one])), ("self", A)]
    if kind == "D_times":
        cands.append(("inverse", inverse_set(A)))
        hist = rep_histogram(A, A, "quot")
    else:
        cands.append(("negation", -A))
        hist = rep_histogram(A, A, "diff")
    by_pop = sorted(hist.counts.items(), key=lambda kv: (-kv[1], kv[0]))
    taken = 0
    for x, _ in by_pop:
        if taken >= pool.slice_count:
            break
        if x == one:
            continue
        sl = popular_slice(A, x) if kind == "D_times" else A & translate(A, x)
        cands.append((f"slice_{x}", sl))
        taken += 1
    cands.extend(extra)
    best = None
    for label, B in cands:
        if not B or (kind == "D_times" and B.has_zero):
            continue
        w = product_witness(A, B, kind)
        v = validate_D_witness(A, w)
        if best is None or v < best[0]:
            best = (v, w, label)
    return best


def key_inequality_probe(A: FiniteSet, pool: PoolConfig = DEFAULT_POOL, extra=()) -> Report:
    """Compare the best d+ lower bound against the best Dx upper witness.

    Diagnostic only: the two sides are one-sided estimates in opposite
    directions, so the ratio may legitimately fall below 1.
    """
    if A.has_zero:
        raise DomainError("probe needs 0 not in A")
    lo = d_lower(A, "d_plus", pool)
    up, w, label = D_upper(A, "D_times", pool, extra)
    rep = Report()
    rep.quantities["d_plus_lower"] = lo.value
    rep.quantities["d_plus_witness"] = lo.label
    rep.quantities["D_times_upper"] = up
    rep.quantities["D_times_witness"] = label
    rep.quantities["key_ratio"] = lo.value / up
    rep.certificates.append({"type": "D_witness", "witness": w.to_dict(), "value": up})
    rep.soft_checks.append(soft("d_plus_lower_over_D_times_upper", lo.value / up, len(A),
                                "key_inequality"))
    return rep


# -- tails and Hoelder -------------------------------------------------------

def chebyshev_tail(A: FiniteSet, B: FiniteSet, op: str, tau: int):
    """``(#{x : r(x) >= tau}, E_3 / tau^3)``; raises if the tail exceeds the bound."""
    if tau < 1:
        raise ValueError("tau must be a positive integer")
    counts = rep_multiplicities(A, B, op)
    tail = sum(1 for c in counts if c >= tau)
    E3 = _kernels.moment(counts, 3)
    if tail * tau**3 > E3:
        raise InvariantViolation(f"Chebyshev tail {tail} > E3/tau^3 = {E3}/{tau**3}")
    return tail, Fraction(E3, tau**3)


@dataclass(frozen=True)
class SigmaBoundResult:
    holds: bool
    count: int
    size_c: int
    fourth_moment: int

    @property
    def lhs(self):
        return self.count**4

    @property
    def rhs(self):
        return self.size_c**3 * self.fourth_moment


def sigma_bound_check(A, B, C, sigma2, sigma3, cap: int = SIGMA_CAP) -> SigmaBoundResult:
    """Per-coefficient Hoelder bound for ``a + s2 b + s3 c = 0``:

    ``count <= |C|^(3/4) (sum_x r_{A + s2 B}(x)^4)^(1/4)``, checked as
    ``count^4 <= |C|^3 * sum r^4``.
    """
    s2, s3 = to_rational(sigma2), to_rational(sigma3)
    if s2 == 0 or s3 == 0:
        raise DomainError("coefficients must be nonzero")
    if not (A and B and C):
        raise DomainError("empty set")
    if len(A) * len(B) * len(C) > cap:
        raise ResourceLimitError(f"grid {len(A) * len(B) * len(C)} exceeds cap {cap}")
    count = count_linear_solutions(A, B, C, 1, s2, s3)
    # r_{A + s2 B} is r_{A - (-s2) B}
    counts = rep_multiplicities(A, dilate(B, -s2), "diff")
    m4 = _kernels.moment(counts, 4)
    res = SigmaBoundResult(count**4 <= len(C) ** 3 * m4, count, len(C), m4)
    if not res.holds:
        raise InvariantViolation(f"Hoelder bound failed: {res.lhs} > {res.rhs}")
    return res


def witness_monotonicity(A: FiniteSet, B: FiniteSet, op: str = "diff"):
    """Exact checks ``E4/(|A||B|^3) <= E3/(|A||B|^2) <= E2/(|A||B|)``."""
    counts = rep_multiplicities(A, B, op)
    a, b = len(A), len(B)
    e2, e3, e4 = (_kernels.moment(counts, m) for m in (2, 3, 4))
    r4 = Fraction(e4, a * b**3)
    r3 = Fraction(e3, a * b**2)
    r2 = Fraction(e2, a * b)
    return [le_check(f"moment_monotone_4_3[{op}]", r4, r3),
            le_check(f"moment_monotone_3_2[{op}]", r3, r2)]
