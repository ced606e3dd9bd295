"""Test-set families: progressions, the odd-times-power-of-two example, random subsets.

Random subsets use SplitMix64 (Steele, Lea & Flood 2014) with a fixed
selection rule, so a ``(N, n, seed)`` triple names the same set on every
platform and Python version:

* ``uniform(k)``: draw 64-bit words ``x`` until ``x < 2**64 - (2**64 % k)``
  and return ``x % k``;
* ``random_subset``: partial Fisher-Yates on ``[1, ..., N]``: for
  ``i = 0..n-1`` swap position ``i`` with ``i + uniform(N - i)``; the set is
  the first ``n`` positions.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from fractions import Fraction

from .core_sets import FiniteSet, to_rational
from .errors import ConfigError

KINDS = ("ap", "gp", "balog_wooley", "random_subset")

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self, k: int) -> int:
        """Unbiased integer in ``[0, k)`` by rejection."""
        if not 1 <= k <= 1 << 64:
            raise ValueError("range must be in [1, 2**64]")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k


def sample_without_replacement(N: int, n: int, rng: SplitMix64) -> list:
    """First ``n`` entries of a partial Fisher-Yates shuffle of ``1..N`` (sparse swaps)."""
    swapped = {}
    out = []
    for i in range(n):
        j = i + rng.uniform(N - i)
        vi, vj = swapped.get(i, i + 1), swapped.get(j, j + 1)
        swapped[j] = vi
        out.append(vj)
    return out


@dataclass(frozen=True)
class FamilySpec:
    """Parameters per kind: ap (n, start, step), gp (n, start, ratio),
    balog_wooley (S, P), random_subset (N, n, seed)."""
    kind: str
    n: int | None = None
    start: Fraction | int | str | None = None
    step: Fraction | int | str | None = None
    ratio: Fraction | int | str | None = None
    S: int | None = None
    P: int | None = None
    N: int | None = None
    seed: int = 0

    def to_dict(self):
        d = {k: v for k, v in asdict(self).items() if v is not None}
        return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in d.items()}

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown family parameters: {sorted(extra)}")
        return cls(**d)

    def with_size(self, n: int) -> "FamilySpec":
        """The same family at cardinality ``n`` (balog_wooley: see ``bw_shape``)."""
        d = asdict(self)
        if self.kind == "balog_wooley":
            d["S"], d["P"] = bw_shape(n)
        else:
            d["n"] = n
        return FamilySpec(**d)


def bw_shape(n: int):
    """``(S, P)`` with ``S*P = n`` and ``P`` the largest power of two with ``P**3 <= n``."""
    if n < 1:
        raise ConfigError("size must be >= 1")
    P = 1
    while n % (2 * P) == 0 and (2 * P) ** 3 <= n:
        P *= 2
    return n // P, P


def _need(spec, *names):
    for name in names:
        if getattr(spec, name) is None:
            raise ConfigError(f"{spec.kind} needs parameter {name!r}")


def _positive(name, v):
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise ConfigError(f"{name} must be a positive integer, got {v!r}")


def _rational(name, v):
    try:
        return to_rational(v)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name}: {exc}") from None


def generate(spec: FamilySpec) -> FiniteSet:
    if spec.kind == "ap":
        _need(spec, "n")
        _positive("n", spec.n)
        a = _rational("start", 1 if spec.start is None else spec.start)
        d = _rational("step", 1 if spec.step is None else spec.step)
        if d == 0:
            raise ConfigError("ap step must be nonzero")
        return FiniteSet(a + i * d for i in range(spec.n))
    if spec.kind == "gp":
        _need(spec, "n")
        _positive("n", spec.n)
        a = _rational("start", 1 if spec.start is None else spec.start)
        r = _rational("ratio", 2 if spec.ratio is None else spec.ratio)
        if r in (0, 1, -1):
            raise ConfigError("gp ratio must avoid 0, 1 and -1")
        if a == 0:
            raise ConfigError("gp start must be nonzero")
        return FiniteSet(a * r**i for i in range(spec.n))
    if spec.kind == "balog_wooley":
        _need(spec, "S", "P")
        _positive("S", spec.S)
        _positive("P", spec.P)
        return FiniteSet((2 * m - 1) << j for m in range(1, spec.S + 1)
                         for j in range(1, spec.P + 1))
    if spec.kind == "random_subset":
        _need(spec, "N", "n")
        _positive("N", spec.N)
        _positive("n", spec.n)
        if spec.n > spec.N:
            raise ConfigError("random_subset needs n <= N")
        if not isinstance(spec.seed, int) or not 0 <= spec.seed < 1 << 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        return FiniteSet(sample_without_replacement(spec.N, spec.n, SplitMix64(spec.seed)))
    raise ConfigError(f"unknown family kind {spec.kind!r}; expected one of {KINDS}")


CORPUS_SIZES = (4, 8, 16, 32, 64, 128)


def default_corpus(sizes=CORPUS_SIZES, seed: int = 0, N: int = 1000):
    """``[(label, spec, set)]`` over ap, gp, balog_wooley and random_subset at each size."""
    out = []
    for n in sizes:
        specs = [
            FamilySpec("ap", n=n),
            FamilySpec("gp", n=n),
            FamilySpec("balog_wooley").with_size(n),
            FamilySpec("random_subset", n=n, N=max(N, n), seed=seed),
        ]
        for spec in specs:
            out.append((f"{spec.kind}-{n}", spec, generate(spec)))
    return out
