"""Constructive decompositions driven by dyadic pigeonholing.

One extraction step takes a set ``T`` and a witness ``B`` and returns a
nonempty ``A' ⊆ T``:

1. histogram ``r`` of ``T/B`` (or ``T-B``), choose the dyadic band
   ``P = {x : Δ <= r(x) < 2Δ}`` maximizing ``|P| Δ^m``;
2. for ``a ∈ T`` count ``s(a) = #{(x, b) ∈ P×B : a = x·b}`` (or ``x+b``),
   choose the band ``A' = {a : q <= s(a) < 2q}`` maximizing ``|A'| q``.

In the third-moment modes ``A'`` is covered ``q`` times by quotients
(differences) of ``B`` and ``P``, which yields an explicit covering witness
for ``A'``.  The fourth-moment mode additionally supports counting the
solutions of ``(p+b)/(q+c) = (p'+b')/(q'+c')`` over ``P`` and ``B``.

The decompositions iterate extraction steps on shrinking remainders.
Certificates keep every intermediate set so they can be rechecked from
scratch by ``revalidate``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from . import _kernels
from .core_sets import FiniteSet, combine, inverse_set
from .energy import (best_bucket, dyadic_buckets, multiplicative_energy, pigeonhole_holds,
                     additive_energy, rep_histogram)
from .errors import DomainError, InvalidWitnessError, InvariantViolation, ResourceLimitError
from .exact_roots import roots_sum_ge
from .report import ExactCheck, eq_check, le_check, soft
from .structure_stats import (DEFAULT_POOL, DUpperWitness, PoolConfig, d_lower,
                              validate_D_witness)

SOLS_CAP = 6

# mode -> (histogram op, moment, secondary op)
EXTRACT_MODES = {
    "mult": ("quot", 3),
    "add": ("diff", 3),
    "fourth": ("diff", 4),
}


def _fs(keys) -> FiniteSet:
    return FiniteSet._trusted(tuple(sorted(keys)))


def _union(sets) -> FiniteSet:
    out = FiniteSet()
    for s in sets:
        out = out | s
    return out


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 0 else 0


# -- extraction --------------------------------------------------------------

@dataclass
class ExtractionCertificate:
    mode: str
    source: FiniteSet
    witness: FiniteSet
    delta: int
    level: FiniteSet
    q: int
    extracted: FiniteSet
    moment_value: int
    level_mass: int
    n_buckets: int
    secondary_mass: int
    extracted_mass: int
    n_secondary_buckets: int
    covering: DUpperWitness | None = None
    covering_claimed: Fraction | None = None
    covering_value: Fraction | None = None
    solutions: int | None = None
    solutions_note: str = ""
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.verdict for c in self.checks)

    def to_dict(self):
        d = {
            "mode": self.mode, "source": self.source, "witness": self.witness,
            "delta": self.delta, "level": self.level, "q": self.q,
            "extracted": self.extracted, "moment_value": self.moment_value,
            "level_mass": self.level_mass, "n_buckets": self.n_buckets,
            "secondary_mass": self.secondary_mass, "extracted_mass": self.extracted_mass,
            "n_secondary_buckets": self.n_secondary_buckets,
            "covering": self.covering.to_dict() if self.covering else None,
            "covering_claimed": self.covering_claimed, "covering_value": self.covering_value,
            "solutions": self.solutions, "solutions_note": self.solutions_note,
            "checks": [c.to_dict() for c in self.checks],
        }
        return d

    @classmethod
    def from_dict(cls, d):
        frac = lambda v: None if v is None else Fraction(v)
        return cls(
            mode=d["mode"], source=FiniteSet(d["source"]), witness=FiniteSet(d["witness"]),
            delta=int(d["delta"]), level=FiniteSet(d["level"]), q=int(d["q"]),
            extracted=FiniteSet(d["extracted"]), moment_value=int(d["moment_value"]),
            level_mass=int(d["level_mass"]), n_buckets=int(d["n_buckets"]),
            secondary_mass=int(d["secondary_mass"]), extracted_mass=int(d["extracted_mass"]),
            n_secondary_buckets=int(d["n_secondary_buckets"]),
            covering=DUpperWitness.from_dict(d["covering"]) if d.get("covering") else None,
            covering_claimed=frac(d.get("covering_claimed")),
            covering_value=frac(d.get("covering_value")),
            solutions=None if d.get("solutions") is None else int(d["solutions"]),
            solutions_note=d.get("solutions_note", ""),
            checks=[ExactCheck.from_dict(c) for c in d.get("checks", [])],
        )


def _secondary_counts(T, B, P, op):
    """``s(a) = #{b ∈ B : a / b ∈ P}`` (quot) or ``#{b : a - b ∈ P}`` (diff), keyed by a."""
    return dict(zip(T, _kernels.membership_counts(T, B, op, P)))


def _covering_witness(mode, A1, B, P, q):
    """Covering of ``A1`` by popular quotients/differences built from ``(B, P)``.

    ``s(a) = #{(x, b) : a = x b}`` equals ``r_{B / P^{-1}}(a)`` and
    ``r_{P / B^{-1}}(a)``; additively ``r_{B - (-P)}`` and ``r_{P - (-B)}``.
    The orientation with ``|R| <= |Q|`` is used, and ``t`` is lowered from
    ``q`` to the largest value meeting ``t^2 |A1| <= |Q| |R|^2``.
    """
    if mode == "mult":
        Q, R = (B, inverse_set(P)) if len(P) <= len(B) else (P, inverse_set(B))
        kind = "D_times"
    else:
        Q, R = (B, -P) if len(P) <= len(B) else (P, -B)
        kind = "D_plus"
    t = q
    while t > 1 and t * t * len(A1) > len(Q) * len(R) ** 2:
        t -= 1
    return DUpperWitness(kind, Q, R, t)


def count_ratio_solutions(P: FiniteSet, B: FiniteSet, cap: int = SOLS_CAP) -> int:
    """``#{(p,b,q,c,p',b',q',c') : (p+b)/(q+c) = (p'+b')/(q'+c')}`` with nonzero denominators.

    Grouped count: with ``w(u) = r_{P+B}(u)``, the number of 4-tuples giving
    the ratio ``v`` is ``N(v) = sum_{u1/u2 = v} w(u1) w(u2)`` and the answer
    is ``sum_v N(v)^2``.
    """
    if len(P) > cap or len(B) > cap:
        raise ResourceLimitError(f"|P|={len(P)}, |B|={len(B)} exceed solution-count cap {cap}")
    w = Counter(p + b for p in P for b in B)
    N = Counter()
    for u1, w1 in w.items():
        for u2, w2 in w.items():
            if u2 != 0:
                N[u1 / u2] += w1 * w2
    return sum(v * v for v in N.values())


def extract(T: FiniteSet, B: FiniteSet, mode: str = "mult", count_solutions: bool = False,
            sols_cap: int = SOLS_CAP) -> ExtractionCertificate:
    if mode not in EXTRACT_MODES:
        raise ValueError(f"mode must be one of {sorted(EXTRACT_MODES)}")
    if not T or not B:
        raise DomainError("extraction needs nonempty T and B")
    op, m = EXTRACT_MODES[mode]
    if op == "quot" and (T.has_zero or B.has_zero):
        raise DomainError("multiplicative extraction needs 0 outside T and B")
    hist = rep_histogram(T, B, op)
    buckets = dyadic_buckets(hist.counts)
    delta = best_bucket(buckets, lambda t, keys: len(keys) * t**m)
    P = _fs(buckets[delta])
    s = _secondary_counts(T, B, P, op)
    sec_buckets = dyadic_buckets(s)
    q = best_bucket(sec_buckets, lambda t, keys: len(keys) * t)
    A1 = _fs(sec_buckets[q])
    cert = ExtractionCertificate(
        mode=mode, source=T, witness=B, delta=delta, level=P, q=q, extracted=A1,
        moment_value=hist.moment(m), level_mass=len(P) * delta**m, n_buckets=len(buckets),
        secondary_mass=sum(s.values()), extracted_mass=len(A1) * q,
        n_secondary_buckets=len(sec_buckets))
    if mode in ("mult", "add"):
        w = _covering_witness(mode, A1, B, P, q)
        cert.covering = w
        cert.covering_claimed = Fraction(len(B) ** 2 * len(P) ** 2, q**3 * len(A1))
        cert.covering_value = validate_D_witness(A1, w)
    elif count_solutions:
        try:
            cert.solutions = count_ratio_solutions(P, B, sols_cap)
        except ResourceLimitError as exc:
            cert.solutions_note = f"skipped: {exc}"
    cert.checks = extraction_checks(cert, hist.counts, s)
    if not cert.passed:
        bad = [c.name for c in cert.checks if not c.verdict]
        raise InvariantViolation(f"extraction certificate failed: {bad}")
    return cert


def third_moment_extract(T, B, mode="mult"):
    """Extraction with third-moment pigeonholing; ``mode`` is ``'mult'`` or ``'add'``."""
    if mode not in ("mult", "add"):
        raise ValueError("third-moment mode is 'mult' or 'add'")
    return extract(T, B, mode)


def fourth_moment_extract(A, B, count_solutions=True, sols_cap=SOLS_CAP):
    return extract(A, B, "fourth", count_solutions, sols_cap)


def extraction_checks(cert: ExtractionCertificate, counts: dict, s: dict) -> list:
    op, m = EXTRACT_MODES[cert.mode]
    T, B, P, A1 = cert.source, cert.witness, cert.level, cert.extracted
    checks = [
        ExactCheck("extracted_nonempty", len(A1) >= 1, len(A1), 1, ">="),
        ExactCheck("extracted_subset", A1.issubset(T), len(A1), len(T), "⊆"),
        eq_check("level_set", P, _fs(x for x, c in counts.items()
                                     if cert.delta <= c < 2 * cert.delta)),
        eq_check("extracted_level_set", A1, _fs(a for a, c in s.items()
                                                if cert.q <= c < 2 * cert.q)),
        eq_check("double_count", cert.secondary_mass, sum(counts[x] for x in P)),
        ExactCheck("level_pigeonhole", pigeonhole_holds(cert.level_mass, cert.moment_value,
                                                        cert.n_buckets, m),
                   cert.level_mass * 2**m * cert.n_buckets, cert.moment_value, ">="),
        ExactCheck("extracted_pigeonhole",
                   pigeonhole_holds(cert.extracted_mass, cert.secondary_mass,
                                    cert.n_secondary_buckets, 1),
                   cert.extracted_mass * 2 * cert.n_secondary_buckets, cert.secondary_mass, ">="),
        le_check("delta_le_B", cert.delta, len(B)),
        le_check("q_le_min_B_P", cert.q, min(len(B), len(P))),
    ]
    if cert.mode == "fourth":
        # q <= |T| fails in general (T = {1}, B = {-1, 1}); Delta <= |T| with
        # q <= |B| gives the same size floor for A1
        checks.append(le_check("delta_le_source", cert.delta, len(T)))
        if cert.solutions is not None and not A1.has_zero:
            ex = multiplicative_energy(A1)
            checks.append(le_check("ratio_solutions_floor", cert.q**4 * ex, cert.solutions))
    if cert.covering is not None:
        checks.append(le_check("covering_claim_le_validated", cert.covering_claimed,
                               cert.covering_value))
    return checks


def revalidate_extraction(cert: ExtractionCertificate) -> None:
    """Recompute an extraction from its inputs with independent code paths; raise on mismatch."""
    op, m = EXTRACT_MODES[cert.mode]
    T, B = cert.source, cert.witness
    counts = {}
    for t in T:
        for b in B:
            x = t / b if op == "quot" else t - b
            counts[x] = counts.get(x, 0) + 1
    bands = {}
    for x, c in counts.items():
        bands.setdefault(1 << (c.bit_length() - 1), []).append(x)
    delta = max(sorted(bands), key=lambda t: (len(bands[t]) * t**m, -t))
    Pset = set(bands[delta])
    s = {}
    for a in T:
        s[a] = sum(1 for b in B if (a / b if op == "quot" else a - b) in Pset)
    sbands = {}
    for a, c in s.items():
        if c:
            sbands.setdefault(1 << (c.bit_length() - 1), []).append(a)
    q = max(sorted(sbands), key=lambda t: (len(sbands[t]) * t, -t))
    expect = {
        "delta": delta, "q": q, "level": _fs(Pset), "extracted": _fs(sbands[q]),
        "moment_value": sum(c**m for c in counts.values()),
        "n_buckets": len(bands), "n_secondary_buckets": len(sbands),
        "secondary_mass": sum(s.values()),
        "level_mass": len(Pset) * delta**m, "extracted_mass": len(sbands[q]) * q,
    }
    for key, val in expect.items():
        if getattr(cert, key) != val:
            raise InvariantViolation(f"revalidation mismatch in {key}: {getattr(cert, key)} != {val}")
    checks = extraction_checks(cert, counts, s)
    bad = [c.name for c in checks if not c.verdict]
    if bad:
        raise InvariantViolation(f"revalidation failed: {bad}")
    if cert.covering is not None:
        try:
            v = validate_D_witness(cert.extracted, cert.covering)
        except InvalidWitnessError as exc:
            raise InvariantViolation(f"covering witness invalid on revalidation: {exc}") from None
        if v != cert.covering_value:
            raise InvariantViolation("covering value mismatch")
    if cert.solutions is not None:
        if count_ratio_solutions(cert.level, cert.witness, cap=max(len(cert.level), len(B))) \
                != cert.solutions:
            raise InvariantViolation("ratio-solution count mismatch")


# -- decompositions ----------------------------------------------------------

@dataclass
class DecompositionCertificate:
    mode: str                      # "main", "partition" or "fourth"
    source: FiniteSet
    pieces: list                   # the extracted sets A_1..A_K, in order
    steps: list = field(default_factory=list)      # ExtractionCertificate per piece (main/fourth)
    X: FiniteSet | None = None
    Y: FiniteSet | None = None
    B: FiniteSet | None = None     # partition: small-d+ side
    C: FiniteSet | None = None     # partition: small-dx side
    branches: list = field(default_factory=list)   # partition: "additive"/"multiplicative"/"trivial"
    sub: list = field(default_factory=list)        # partition: DecompositionCertificate per split
    bounds: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    soft_checks: list = field(default_factory=list)

    @property
    def K(self) -> int:
        return len(self.pieces)

    def all_checks(self) -> list:
        """Own checks plus those of every extraction step and sub-decomposition."""
        out = list(self.checks)
        for st in self.steps:
            out += st.checks
        for sub in self.sub:
            out += sub.all_checks()
        return out

    @property
    def passed(self):
        return all(c.verdict for c in self.checks)

    def to_dict(self):
        return {
            "mode": self.mode, "source": self.source, "K": self.K, "pieces": self.pieces,
            "steps": [s.to_dict() for s in self.steps],
            "X": self.X, "Y": self.Y, "B": self.B, "C": self.C,
            "branches": list(self.branches), "sub": [c.to_dict() for c in self.sub],
            "bounds": self.bounds,
            "checks": [c.to_dict() for c in self.checks],
        }

    @classmethod
    def from_dict(cls, d):
        opt = lambda k: None if d.get(k) is None else FiniteSet(d[k])
        return cls(
            mode=d["mode"], source=FiniteSet(d["source"]),
            pieces=[FiniteSet(p) for p in d["pieces"]],
            steps=[ExtractionCertificate.from_dict(s) for s in d.get("steps", [])],
            X=opt("X"), Y=opt("Y"), B=opt("B"), C=opt("C"),
            branches=list(d.get("branches", [])),
            sub=[cls.from_dict(c) for c in d.get("sub", [])],
            bounds=dict(d.get("bounds", {})),
            checks=[ExactCheck.from_dict(c) for c in d.get("checks", [])],
        )


def _require_multiplicative(A):
    if not A:
        raise DomainError("decomposition of the empty set")
    if A.has_zero:
        raise DomainError("decompositions need 0 not in A")


def _half_cover(A, kind, mode, pool, count_solutions=False, sols_cap=SOLS_CAP):
    """Extract from remainders until the extracted pieces cover at least half of A."""
    n = len(A)
    covered = FiniteSet()
    pieces, steps = [], []
    while 2 * len(covered) < n:
        T = A.minus(covered)
        B = d_lower(T, kind, pool).witness
        cert = extract(T, B, mode, count_solutions, sols_cap)
        pieces.append(cert.extracted)
        steps.append(cert)
        covered = covered | cert.extracted
        if len(pieces) > ceil(n / 2):
            raise InvariantViolation("extraction loop exceeded ceil(|A|/2) steps")
    all_but_last = _union(pieces[:-1])
    return pieces, steps, covered, A.minus(all_but_last)


def _cover_checks(A, pieces, X, Y, union_side, rest_side):
    n = len(A)
    half = -(-n // 2)
    checks = [
        eq_check("cover_union", X | Y, A),
        ExactCheck("cover_X_half", len(X) >= half, len(X), half, ">="),
        ExactCheck("cover_Y_half", len(Y) >= half, len(Y), half, ">="),
        le_check("cover_steps", len(pieces), half),
        ExactCheck("pieces_nonempty", all(pieces), min((len(p) for p in pieces), default=0), 1, ">="),
        eq_check("pieces_disjoint", sum(len(p) for p in pieces), len(_union(pieces))),
        eq_check("union_side", union_side, _union(pieces)),
        eq_check("rest_side", rest_side, A.minus(_union(pieces[:-1]))),
    ]
    return checks


def cover_decompose(A: FiniteSet, pool: PoolConfig = DEFAULT_POOL,
                    diagnostics: bool = True) -> DecompositionCertificate:
    """``X ∪ Y = A`` with ``|X|, |Y| >= |A|/2``; X has small d+, Y small dx.

    Each piece comes from a multiplicative extraction on the current
    remainder, with the witness taken from the dx witness pool.
    """
    _require_multiplicative(A)
    pieces, steps, X, Y = _half_cover(A, "d_times", "mult", pool)
    cert = DecompositionCertificate("main", A, pieces, steps, X=X, Y=Y)
    cert.checks = _cover_checks(A, pieces, X, Y, X, Y)
    cert.bounds["covering_upper_per_piece"] = [s.covering_value for s in steps]
    if diagnostics:
        dp = d_lower(X, "d_plus", pool).value
        dt = d_lower(Y, "d_times", pool).value
        cert.bounds.update({"d_plus_X_lower": dp, "d_times_Y_lower": dt})
        cert.soft_checks.append(soft("cover_d_plus_X_times_d_times_Y", dp * dt, len(A),
                                     "cover_product"))
    _fail_if_bad(cert)
    return cert


def fourth_cover_decompose(A: FiniteSet, pool: PoolConfig = DEFAULT_POOL,
                           count_solutions: bool = False, sols_cap: int = SOLS_CAP,
                           diagnostics: bool = True) -> DecompositionCertificate:
    """``X ∪ Y = A``, halves as above; Y (the union of pieces) has small multiplicative energy."""
    _require_multiplicative(A)
    pieces, steps, Y, X = _half_cover(A, "d4_plus", "fourth", pool, count_solutions, sols_cap)
    cert = DecompositionCertificate("fourth", A, pieces, steps, X=X, Y=Y)
    cert.checks = _cover_checks(A, pieces, X, Y, Y, X)
    ey = multiplicative_energy(Y)
    cert.bounds["E_times_Y"] = ey
    if diagnostics:
        d4 = d_lower(X, "d4_plus", pool).value
        cert.bounds["d4_plus_X_lower"] = d4
        cert.soft_checks.append(soft("fourth_d4_plus_X_times_E_times_Y", d4 * ey, len(A),
                                     "fourth_cover_product"))
    _fail_if_bad(cert)
    return cert


def partition_decompose(A: FiniteSet, pool: PoolConfig = DEFAULT_POOL,
                        diagnostics: bool = True) -> DecompositionCertificate:
    """Partition ``A = B ⊔ C`` with B of small d+ and C of small dx.

    Repeatedly split the remainder with ``cover_decompose`` and keep the half
    whose certified d-bound is smaller; once ``|remainder|^2 <= |A|`` the
    remainder itself joins B, since ``d+(S) <= |S|``.
    """
    _require_multiplicative(A)
    n = len(A)
    rem = A
    pieces, branches, subs = [], [], []
    while rem:
        if len(rem) ** 2 <= n:
            pieces.append(rem)
            branches.append("trivial")
            break
        sub = cover_decompose(rem, pool, diagnostics=False)
        dp = d_lower(sub.X, "d_plus", pool).value
        dt = d_lower(sub.Y, "d_times", pool).value
        sub.bounds.update({"d_plus_X_lower": dp, "d_times_Y_lower": dt})
        if dp <= dt:
            piece, branch = sub.X, "additive"
        else:
            piece, branch = sub.Y, "multiplicative"
        pieces.append(piece)
        branches.append(branch)
        subs.append(sub)
        rem = rem.minus(piece)
        if len(pieces) > ceil_log2(n) + 1:
            raise InvariantViolation("partition exceeded ceil(log2 n) + 1 iterations")
    B = _union(p for p, br in zip(pieces, branches) if br != "multiplicative")
    C = _union(p for p, br in zip(pieces, branches) if br == "multiplicative")
    cert = DecompositionCertificate("partition", A, pieces, B=B, C=C, branches=branches, sub=subs)
    cert.checks = _partition_checks(A, cert)
    if diagnostics:
        _partition_diagnostics(A, cert, pool)
    _fail_if_bad(cert)
    return cert


def _partition_checks(A, cert):
    n = len(A)
    return [
        eq_check("partition_union", cert.B | cert.C, A),
        ExactCheck("partition_disjoint", cert.B.isdisjoint(cert.C), len(cert.B & cert.C), 0, "=="),
        le_check("partition_iterations", cert.K, ceil_log2(n) + 1),
        eq_check("pieces_disjoint", sum(len(p) for p in cert.pieces), n),
        ExactCheck("pieces_nonempty", all(cert.pieces),
                   min((len(p) for p in cert.pieces), default=0), 1, ">="),
    ]


def _partition_diagnostics(A, cert, pool):
    n = len(A)
    b = {}
    if cert.B:
        b["d_plus_B_lower"] = d_lower(cert.B, "d_plus", pool).value
        b["E_plus_B"] = additive_energy(cert.B)
        b["E_plus_B_A"] = additive_energy(cert.B, A)
        cert.soft_checks += [
            soft("partition_d_plus_B", b["d_plus_B_lower"], n, "decomp_d_bound"),
            soft("partition_E_plus_B", b["E_plus_B"], n, "decomp_energy"),
            soft("partition_E_plus_B_A", b["E_plus_B_A"], n, "decomp_cross_energy"),
        ]
    if cert.C:
        b["d_times_C_lower"] = d_lower(cert.C, "d_times", pool).value
        b["E_times_C"] = multiplicative_energy(cert.C)
        b["E_times_C_A"] = multiplicative_energy(cert.C, A)
        cert.soft_checks += [
            soft("partition_d_times_C", b["d_times_C_lower"], n, "decomp_d_bound"),
            soft("partition_E_times_C", b["E_times_C"], n, "decomp_energy"),
            soft("partition_E_times_C_A", b["E_times_C_A"], n, "decomp_cross_energy"),
        ]
    cert.bounds.update(b)


def _fail_if_bad(cert):
    bad = [c.name for c in cert.checks if not c.verdict]
    if bad:
        raise InvariantViolation(f"{cert.mode} decomposition failed: {bad}")


def decompose(A: FiniteSet, mode: str = "main", pool: PoolConfig = DEFAULT_POOL, **kw):
    if mode == "main":
        return cover_decompose(A, pool, **kw)
    if mode == "partition":
        return partition_decompose(A, pool, **kw)
    if mode == "fourth":
        return fourth_cover_decompose(A, pool, **kw)
    raise ValueError(f"mode must be main, partition or fourth, got {mode!r}")


def revalidate(cert: DecompositionCertificate) -> None:
    """Recheck a decomposition certificate from scratch; raise ``InvariantViolation`` on any mismatch."""
    A = cert.source
    n = len(A)
    if cert.mode in ("main", "fourth"):
        covered = FiniteSet()
        for piece, step in zip(cert.pieces, cert.steps):
            if step.source != A.minus(covered):
                raise InvariantViolation("step source is not the current remainder")
            if step.extracted != piece:
                raise InvariantViolation("piece does not match its extraction")
            revalidate_extraction(step)
            covered = covered | piece
        if len(cert.steps) != len(cert.pieces):
            raise InvariantViolation("steps and pieces differ in number")
        if 2 * len(_union(cert.pieces[:-1])) >= n or 2 * len(covered) < n:
            raise InvariantViolation("stopping rule violated")
        if cert.mode == "main":
            checks = _cover_checks(A, cert.pieces, cert.X, cert.Y, cert.X, cert.Y)
        else:
            checks = _cover_checks(A, cert.pieces, cert.X, cert.Y, cert.Y, cert.X)
    elif cert.mode == "partition":
        rem = A
        subs = iter(cert.sub)
        for piece, branch in zip(cert.pieces, cert.branches):
            if branch == "trivial":
                if piece != rem or len(rem) ** 2 > n:
                    raise InvariantViolation("trivial piece must be a small remainder")
            else:
                sub = next(subs)
                if sub.source != rem:
                    raise InvariantViolation("split applied to the wrong remainder")
                revalidate(sub)
                if piece != (sub.X if branch == "additive" else sub.Y):
                    raise InvariantViolation("piece is not a half of its split")
            rem = rem.minus(piece)
        if rem:
            raise InvariantViolation("partition leaves elements uncovered")
        checks = _partition_checks(A, cert)
    else:
        raise InvariantViolation(f"unknown certificate mode {cert.mode!r}")
    bad = [c.name for c in checks if not c.verdict]
    if bad:
        raise InvariantViolation(f"revalidation failed: {bad}")


# -- union inequalities -------------------------------------------------------

@dataclass(frozen=True)
class UnionCheck:
    holds: bool
    mode: str
    union_value: int
    part_values: tuple

    def to_check(self) -> ExactCheck:
        root = 4 if self.mode == "l4_mult_energy" else 3
        return ExactCheck(f"union_{self.mode}", self.holds,
                          f"{self.union_value}^(1/{root})",
                          " + ".join(f"{v}^(1/{root})" for v in self.part_values), "<=")


def union_triangle_check(parts, B: FiniteSet | None = None, mode: str = "l3_diff") -> UnionCheck:
    """Exact union inequalities for disjoint parts.

    ``l3_diff`` / ``l3_quot``: ``E3(∪ parts, B)^(1/3) <= Σ E3(part, B)^(1/3)``.
    ``l4_mult_energy``: ``Ex(∪ parts)^(1/4) <= Σ Ex(part)^(1/4)``.
    """
    parts = [p for p in parts]
    seen = set()
    for p in parts:
        if not seen.isdisjoint(p):
            raise DomainError("parts are not pairwise disjoint")
        seen.update(p)
    U = _union(parts)
    if mode in ("l3_diff", "l3_quot"):
        if not B:
            raise DomainError("witness B must be nonempty")
        op = "diff" if mode == "l3_diff" else "quot"
        from .energy import energy
        uv = energy(U, B, op, 3).value
        pv = tuple(energy(p, B, op, 3).value for p in parts if p)
        holds = roots_sum_ge(pv, uv, 3)
    elif mode == "l4_mult_energy":
        uv = multiplicative_energy(U)
        pv = tuple(multiplicative_energy(p) for p in parts if p)
        holds = roots_sum_ge(pv, uv, 4)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    res = UnionCheck(holds, mode, uv, pv)
    if not holds:
        raise InvariantViolation(f"union inequality {mode} failed: {uv} vs {pv}")
    return res
